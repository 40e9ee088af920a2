//! CSV layout for outcome data.
//!
//! A header line `a,b,bp` (triples) or `a,ap,b,bp` (quads) followed by one
//! trial per row. Cells are `+1`, `-1`, `1` or `-1`. Files without a header
//! are accepted, the layout then follows from the column count.

use std::io::{Read, Write};
use std::path::Path;

use crate::types::{DataSetTriple, Outcome, TrialQuad, TrialTriple};
use crate::{Error, Result};

pub const TRIPLE_HEADER: [&str; 3] = ["a", "b", "bp"];
pub const QUAD_HEADER: [&str; 4] = ["a", "ap", "b", "bp"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DataFile {
    Triples(DataSetTriple),
    Quads(Vec<TrialQuad>),
}

fn parse_cell(cell: &str, line: u64) -> Result<Outcome> {
    match cell.trim() {
        "+1" | "1" => Ok(Outcome::PLUS),
        "-1" => Ok(Outcome::MINUS),
        other => Err(Error::Parse { line, cell: other.to_string() }),
    }
}

pub fn read_data<R: Read>(reader: R) -> Result<DataFile> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(reader);

    let mut width: Option<usize> = None;
    let mut rows: Vec<Vec<Outcome>> = Vec::new();
    for (idx, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let line = rec.position().map_or(idx as u64 + 1, |p| p.line());
        if idx == 0 {
            let cells: Vec<&str> = rec.iter().collect();
            if cells == TRIPLE_HEADER || cells == QUAD_HEADER {
                width = Some(cells.len());
                continue;
            }
        }
        let expected = match width {
            Some(w) => w,
            None => {
                if rec.len() != 3 && rec.len() != 4 {
                    return Err(Error::ColumnCount { line, found: rec.len() });
                }
                *width.insert(rec.len())
            }
        };
        if rec.len() != expected {
            return Err(Error::RaggedRow { line, expected, found: rec.len() });
        }
        rows.push(rec.iter().map(|c| parse_cell(c, line)).collect::<Result<_>>()?);
    }

    match width {
        Some(4) => {
            if rows.is_empty() {
                return Err(Error::Empty);
            }
            Ok(DataFile::Quads(rows.iter().map(|r| TrialQuad::new(r[0], r[1], r[2], r[3])).collect()))
        }
        _ => Ok(DataFile::Triples(DataSetTriple::new(
            rows.iter().map(|r| TrialTriple::new(r[0], r[1], r[2])).collect(),
        )?)),
    }
}

pub fn read_data_file(path: &Path) -> Result<DataFile> {
    let file = std::fs::File::open(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    read_data(std::io::BufReader::new(file))
}

pub fn write_triples<W: Write>(mut w: W, trials: &[TrialTriple]) -> std::io::Result<()> {
    writeln!(w, "{}", TRIPLE_HEADER.join(","))?;
    for t in trials {
        writeln!(w, "{},{},{}", t.a, t.b, t.bp)?;
    }
    w.flush()
}

pub fn write_triples_file(path: &Path, trials: &[TrialTriple]) -> Result<()> {
    let io = |source| Error::Io { path: path.to_path_buf(), source };
    let file = std::fs::File::create(path).map_err(io)?;
    write_triples(std::io::BufWriter::new(file), trials).map_err(io)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reads_triples_with_header() {
        let data = "a,b,bp\n+1,1,-1\n-1,-1,+1\n";
        match read_data(data.as_bytes()).unwrap() {
            DataFile::Triples(d) => {
                assert_eq!(d.n(), 2);
                assert_eq!(d.trials()[0], TrialTriple::new(Outcome::PLUS, Outcome::PLUS, Outcome::MINUS));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn reads_quads_and_headerless() {
        let quads = read_data("a,ap,b,bp\n1,1,1,-1\n".as_bytes()).unwrap();
        assert!(matches!(quads, DataFile::Quads(ref q) if q.len() == 1));
        let bare = read_data("1,1,1\n-1,1,1\n".as_bytes()).unwrap();
        assert!(matches!(bare, DataFile::Triples(ref d) if d.n() == 2));
    }

    #[test]
    fn bad_cell_reports_line() {
        let err = read_data("a,b,bp\n1,1,1\n1,0,1\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, ref cell } if cell == "0"), "{err:?}");
        let err = read_data("a,b,bp\n1,x,1\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn ragged_rows_are_rejected() {
        let err = read_data("a,b,bp\n1,1,1\n1,1\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::RaggedRow { line: 3, expected: 3, found: 2 }), "{err:?}");
        let err = read_data("1,1\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::ColumnCount { line: 1, found: 2 }));
    }

    #[test]
    fn header_only_is_empty() {
        assert!(matches!(read_data("a,b,bp\n".as_bytes()), Err(Error::Empty)));
        assert!(matches!(read_data("".as_bytes()), Err(Error::Empty)));
    }

    proptest! {
        #[test]
        fn write_then_read(bits in prop::collection::vec(0u8..8, 1..100)) {
            let trials: Vec<TrialTriple> = bits.iter().map(|&b| TrialTriple::all().nth(b as usize).unwrap()).collect();
            let mut buf = Vec::new();
            write_triples(&mut buf, &trials).unwrap();
            prop_assert_eq!(read_data(&buf[..]).unwrap(), DataFile::Triples(DataSetTriple::new(trials).unwrap()));
        }
    }
}

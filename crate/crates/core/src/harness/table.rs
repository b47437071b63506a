//! CSV and JSON output. Floats are written in shortest round-trip form, so
//! equal inputs give byte-identical files.

use crate::error::{Error, Result};
use serde::Serialize;

/// RFC 4180 CSV with a header row taken from the field names.
pub fn to_csv<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Row {
        m: usize,
        p: f64,
        t: Option<f64>,
        name: &'static str,
    }

    #[test]
    fn header_and_quoting() {
        let rows = [Row { m: 3, p: 0.1, t: None, name: "a,b" }, Row { m: 4, p: 1.0, t: Some(0.5), name: "x" }];
        let s = to_csv(&rows).unwrap();
        assert_eq!(s, "m,p,t,name\r\n3,0.1,,\"a,b\"\r\n4,1.0,0.5,x\r\n");
    }
}

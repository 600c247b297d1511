use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

use crate::args::Format;

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    command: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    generated_unix: Option<u64>,
    records: &'a [T],
}

/// Writes `records` in the requested format. `pretty` renders one record
/// per line for the human format.
pub fn emit<T: Serialize>(
    out: &mut impl Write,
    format: Format,
    command: &str,
    records: &[T],
    timestamp: bool,
    pretty: impl Fn(&T) -> String,
) -> std::io::Result<()> {
    match format {
        Format::Pretty => {
            for r in records {
                writeln!(out, "{}", pretty(r))?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for r in records {
                w.serialize(r).map_err(std::io::Error::other)?;
            }
            w.flush()?;
        }
        Format::Json => {
            let generated_unix =
                timestamp.then(|| SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0));
            let env = Envelope { command, generated_unix, records };
            serde_json::to_writer_pretty(&mut *out, &env).map_err(std::io::Error::other)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct R {
        p: u64,
        ok: bool,
        s: &'static str,
    }

    fn render(format: Format, ts: bool) -> String {
        let mut buf = Vec::new();
        let rows = [R { p: 17, ok: false, s: "a,b" }, R { p: 73, ok: true, s: "c" }];
        emit(&mut buf, format, "test", &rows, ts, |r| format!("{} {}", r.p, r.ok)).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn csv_quotes_and_booleans() {
        assert_eq!(render(Format::Csv, false), "p,ok,s\n17,false,\"a,b\"\n73,true,c\n");
    }

    #[test]
    fn json_timestamp_is_optional() {
        assert!(!render(Format::Json, false).contains("generated_unix"));
        assert!(render(Format::Json, true).contains("generated_unix"));
    }

    #[test]
    fn pretty_lines() {
        assert_eq!(render(Format::Pretty, true), "17 false\n73 true\n");
    }
}

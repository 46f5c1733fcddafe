use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Markdown,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Row {
    pub p: u64,
    pub q: u64,
    #[serde(rename = "L_pq")]
    pub l_pq: u64,
    #[serde(rename = "L_qp")]
    pub l_qp: u64,
}

pub fn render(rows: &[Row], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str("p,q,L_pq,L_qp\n");
            for r in rows {
                writeln!(out, "{},{},{},{}", r.p, r.q, r.l_pq, r.l_qp).unwrap();
            }
        }
        Format::Markdown => {
            out.push_str("| p | q | L(p,q) | L(q,p) |\n|---:|---:|---:|---:|\n");
            for r in rows {
                writeln!(out, "| {} | {} | {} | {} |", r.p, r.q, r.l_pq, r.l_qp).unwrap();
            }
        }
        Format::Json => {
            out = serde_json::to_string_pretty(rows).expect("rows serialize");
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const ROWS: [Row; 2] = [
        Row {
            p: 17,
            q: 41,
            l_pq: 696,
            l_qp: 696,
        },
        Row {
            p: 17,
            q: 73,
            l_pq: 1204,
            l_qp: 916,
        },
    ];

    #[test]
    fn csv() {
        assert_eq!(
            render(&ROWS, Format::Csv),
            "p,q,L_pq,L_qp\n17,41,696,696\n17,73,1204,916\n"
        );
        assert_eq!(render(&[], Format::Csv), "p,q,L_pq,L_qp\n");
    }

    #[test]
    fn json_keys() {
        let v: serde_json::Value = serde_json::from_str(&render(&ROWS, Format::Json)).unwrap();
        assert_eq!(v[1]["L_qp"], 916);
        assert_eq!(v[0]["p"], 17);
    }

    #[test]
    fn markdown_rows() {
        let md = render(&ROWS, Format::Markdown);
        assert_eq!(md.lines().count(), 4);
        assert!(md.contains("| 17 | 73 | 1204 | 916 |"));
    }
}

//! Rendering of certificates and reports as JSON, CSV or plain text.

use std::fmt::Write as _;

use artin1_core::certify::{Certificate, CrosscheckTable, KummerReport, SweepReport};
use clap::ValueEnum;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// CSV header for certificates, one certificate per row. Coefficient lists
/// are `;`-separated ascending coefficients; fibers are `type@place`.
pub const CERTIFICATE_CSV_HEADER: &[&str] = &[
    "p",
    "curve_a",
    "curve_b",
    "curve_j",
    "B_sign",
    "c",
    "twist_d",
    "a4_coeffs",
    "a6_coeffs",
    "fibers",
    "N1",
    "N2",
    "t1",
    "t2",
    "plus_p",
    "minus_p",
    "rho_fp",
    "rho_fp2",
    "artin_invariant",
    "verdict",
];

#[derive(Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRow {
    pub p: u64,
    pub curve_a: Option<String>,
    pub curve_b: Option<String>,
    pub curve_j: Option<String>,
    #[serde(rename = "B_sign")]
    pub b_sign: Option<i8>,
    pub c: Option<String>,
    pub twist_d: Option<String>,
    pub a4_coeffs: String,
    pub a6_coeffs: String,
    pub fibers: String,
    #[serde(rename = "N1")]
    pub n1: i64,
    #[serde(rename = "N2")]
    pub n2: i64,
    pub t1: i64,
    pub t2: i64,
    pub plus_p: Option<u32>,
    pub minus_p: Option<u32>,
    pub rho_fp: Option<u32>,
    pub rho_fp2: Option<u32>,
    pub artin_invariant: String,
    pub verdict: String,
}

impl From<&Certificate> for CertificateRow {
    fn from(c: &Certificate) -> CertificateRow {
        let curve = c.model.curve.as_ref();
        let params = c.model.params.as_ref();
        CertificateRow {
            p: c.p,
            curve_a: curve.map(|e| e.a.clone()),
            curve_b: curve.map(|e| e.b.clone()),
            curve_j: curve.map(|e| e.j.clone()),
            b_sign: params.map(|x| x.b_sign),
            c: params.map(|x| x.c.clone()),
            twist_d: params.map(|x| x.twist_d.clone()),
            a4_coeffs: c.model.a4_coeffs.join(";"),
            a6_coeffs: c.model.a6_coeffs.join(";"),
            fibers: c
                .fibers
                .iter()
                .map(|f| format!("{}@{}", f.kind, f.place))
                .collect::<Vec<_>>()
                .join(";"),
            n1: c.counts.n1,
            n2: c.counts.n2,
            t1: c.traces.t1,
            t2: c.traces.t2,
            plus_p: c.eigen.plus_p,
            minus_p: c.eigen.minus_p,
            rho_fp: c.rho_fp,
            rho_fp2: c.rho_fp2,
            artin_invariant: c.artin_invariant.clone(),
            verdict: c.verdict.to_string(),
        }
    }
}

fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn csv_rows<T: Serialize>(rows: impl IntoIterator<Item = T>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).expect("csv row");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

fn certificates_csv<'a>(certs: impl IntoIterator<Item = &'a Certificate>) -> String {
    let rows: Vec<CertificateRow> = certs.into_iter().map(CertificateRow::from).collect();
    if rows.is_empty() {
        return CERTIFICATE_CSV_HEADER.join(",") + "\n";
    }
    csv_rows(rows)
}

fn certificate_text(c: &Certificate, out: &mut String) {
    let _ = writeln!(out, "p = {}", c.p);
    if let Some(e) = &c.model.curve {
        let _ = writeln!(
            out,
            "  curve      y^2 = x^3 + {}x + {}   (j = {})",
            e.a, e.b, e.j
        );
    }
    if let Some(x) = &c.model.params {
        let _ = writeln!(
            out,
            "  params     B_sign = {}, c = {}, twist d = {}",
            x.b_sign, x.c, x.twist_d
        );
    }
    let _ = writeln!(out, "  A4         [{}]", c.model.a4_coeffs.join(", "));
    let _ = writeln!(out, "  A6         [{}]", c.model.a6_coeffs.join(", "));
    let fibers: Vec<String> = c
        .fibers
        .iter()
        .map(|f| format!("{} at {}", f.kind, f.place))
        .collect();
    let _ = writeln!(out, "  fibers     {}", fibers.join(", "));
    let _ = writeln!(out, "  N1 = {}   N2 = {}", c.counts.n1, c.counts.n2);
    let _ = writeln!(out, "  t1 = {}   t2 = {}", c.traces.t1, c.traces.t2);
    let show = |v: Option<u32>| v.map_or("-".to_string(), |v| v.to_string());
    let _ = writeln!(
        out,
        "  +p x {}, -p x {}   rho(F_p) = {}, rho(F_p^2) = {}",
        show(c.eigen.plus_p),
        show(c.eigen.minus_p),
        show(c.rho_fp),
        show(c.rho_fp2)
    );
    let _ = writeln!(out, "  Artin invariant {}", c.artin_invariant);
    let _ = writeln!(out, "  verdict    {}", c.verdict);
}

pub fn certificate(c: &Certificate, format: Format) -> String {
    match format {
        Format::Json => json(c),
        Format::Csv => certificates_csv([c]),
        Format::Text => {
            let mut s = String::new();
            certificate_text(c, &mut s);
            s
        }
    }
}

pub fn certificates(certs: &[Certificate], format: Format) -> String {
    match format {
        Format::Json => json(certs),
        Format::Csv => certificates_csv(certs),
        Format::Text => {
            let mut s = String::new();
            for (i, c) in certs.iter().enumerate() {
                if i > 0 {
                    s.push('\n');
                }
                certificate_text(c, &mut s);
            }
            s
        }
    }
}

#[derive(Serialize)]
struct SweepJson<'a> {
    certificates: Vec<&'a Certificate>,
    candidates_tried: Vec<usize>,
    unsupported: &'a [u64],
    aggregate: &'static str,
}

fn aggregate(report: &SweepReport) -> &'static str {
    if report.all_certified() {
        "ALL_CERTIFIED"
    } else {
        "NOT_ALL_CERTIFIED"
    }
}

pub fn sweep(report: &SweepReport, format: Format) -> String {
    match format {
        Format::Json => json(&SweepJson {
            certificates: report.certificates().collect(),
            candidates_tried: report.runs.iter().map(|r| r.candidates_tried).collect(),
            unsupported: &report.unsupported,
            aggregate: aggregate(report),
        }),
        Format::Csv => certificates_csv(report.certificates()),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "{:>5} {:>4} {:>10} {:>14} {:>6}  verdict",
                "p", "j", "N1", "N2", "tried"
            );
            for r in &report.runs {
                let c = &r.certificate;
                let j = c.model.curve.as_ref().map_or("-", |e| e.j.as_str());
                let _ = writeln!(
                    s,
                    "{:>5} {:>4} {:>10} {:>14} {:>6}  {}",
                    c.p, j, c.counts.n1, c.counts.n2, r.candidates_tried, c.verdict
                );
            }
            for p in &report.unsupported {
                let _ = writeln!(s, "{p:>5}  unsupported characteristic");
            }
            let _ = writeln!(s, "{}", aggregate(report));
            s
        }
    }
}

#[derive(Serialize)]
struct KummerRow<'a> {
    p: u64,
    curve_a: &'a str,
    curve_b: &'a str,
    curve_j: &'a str,
    rational_two_torsion: u32,
    #[serde(rename = "N1")]
    n1: i64,
    #[serde(rename = "N2")]
    n2: i64,
    expected_n1: i64,
    expected_n2: i64,
    mw_rank_fp: i64,
    mw_rank_fp2: i64,
}

pub fn kummer(r: &KummerReport, format: Format) -> String {
    match format {
        Format::Json => json(r),
        Format::Csv => csv_rows([KummerRow {
            p: r.p,
            curve_a: &r.curve.a,
            curve_b: &r.curve.b,
            curve_j: &r.curve.j,
            rational_two_torsion: r.rational_two_torsion,
            n1: r.n1,
            n2: r.n2,
            expected_n1: r.expected_n1,
            expected_n2: r.expected_n2,
            mw_rank_fp: r.mw_rank_fp,
            mw_rank_fp2: r.mw_rank_fp2,
        }]),
        Format::Text => format!(
            "Km(E x E), p = {}, E: y^2 = x^3 + {}x + {}\n  rational 2-torsion roots {}\n  N1 = {} (expected {})\n  N2 = {} (expected {})\n  Mordell-Weil rank {} over F_p, {} over F_p^2\n",
            r.p,
            r.curve.a,
            r.curve.b,
            r.rational_two_torsion,
            r.n1,
            r.expected_n1,
            r.n2,
            r.expected_n2,
            r.mw_rank_fp,
            r.mw_rank_fp2
        ),
    }
}

pub fn crosscheck(t: &CrosscheckTable, format: Format) -> String {
    match format {
        Format::Json => json(t),
        Format::Csv => csv_rows(&t.rows),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "d = {}", t.d);
            let _ = writeln!(s, "{:>5} {:>6}  {:<9} agree", "p", "trace", "splitting");
            for r in &t.rows {
                let _ = writeln!(
                    s,
                    "{:>5} {:>6}  {:<9} {}",
                    r.p,
                    r.trace,
                    r.splitting.to_string(),
                    r.agree
                );
            }
            let agree = t.rows.iter().filter(|r| r.agree).count();
            let _ = writeln!(s, "{agree}/{} agree", t.rows.len());
            s
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

pub fn checks(list: &[Check], format: Format) -> String {
    match format {
        Format::Json => json(list),
        Format::Csv => csv_rows(list),
        Format::Text => list
            .iter()
            .map(|c| {
                format!(
                    "{} {}: {}\n",
                    if c.passed { "ok  " } else { "FAIL" },
                    c.name,
                    c.detail
                )
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use artin1_core::certify::certify_prime;

    #[test]
    fn csv_header_is_fixed() {
        let cert = certify_prime(5).unwrap().certificate;
        let out = certificate(&cert, Format::Csv);
        let header = out.lines().next().unwrap();
        assert_eq!(header, CERTIFICATE_CSV_HEADER.join(","));
        let mut r = csv::Reader::from_reader(out.as_bytes());
        let row: CertificateRow = r.deserialize().next().unwrap().unwrap();
        assert_eq!(row, CertificateRow::from(&cert));
        assert_eq!(row.n1, 126);
    }

    #[test]
    fn empty_csv_still_has_header() {
        assert_eq!(
            certificates(&[], Format::Csv).trim_end(),
            CERTIFICATE_CSV_HEADER.join(",")
        );
    }

    #[test]
    fn json_round_trip() {
        let cert = certify_prime(7).unwrap().certificate;
        let back: Certificate = serde_json::from_str(&certificate(&cert, Format::Json)).unwrap();
        assert_eq!(back, cert);
    }
}

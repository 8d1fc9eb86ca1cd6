//! From point counts to Frobenius certificates.
//!
//! For a K3 surface over `F_p`, `#X(F_q) = 1 + Tr(Frob | H^2) + q^2`. When
//! the surface is supersingular every eigenvalue on `H^2` is `p` times a
//! root of unity, and once `#X(F_{p^2}) = 1 + 22p^2 + p^4` all 22 of them
//! square to `p^2`, so they are `+-p`. The multiplicities then follow from
//! the trace over `F_p`: `a + b = 22`, `a - b = t1 / p`. Certificates
//! report `a` as the Picard number over `F_p`, which is where the Tate
//! conjecture for K3 surfaces comes in.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::counting::{self, kummer_count_with, Engine, FiberCorrection, KodairaNeron};
use crate::curve::{find_supersingular, find_supersingular_full_two_torsion, Curve};
use crate::error::{Error, Result};
use crate::field::{is_prime, legendre, Field};
use crate::kodaira::{classify_fibers, FiberDatum};
use crate::pencil::{candidate_models, kummer_model, Pencil, Provenance};

/// Largest characteristic the pipeline accepts; keeps `p^4`-size counts
/// interactive and every count well inside `i64`.
pub const PRIME_CAP: u64 = 200;

/// Rank of `H^2` of a K3 surface.
const B2: i64 = 22;

pub const ARTIN_INVARIANT: &str = "1 (cited)";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Certified21,
    /// Consistent spectrum with `+p` multiplicity other than 21.
    CertifiedOther(u32),
    Inconsistent,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Certified21 => write!(f, "CERTIFIED_21"),
            Verdict::CertifiedOther(a) => write!(f, "CERTIFIED_OTHER({a})"),
            Verdict::Inconsistent => write!(f, "INCONSISTENT"),
        }
    }
}

impl FromStr for Verdict {
    type Err = Error;

    fn from_str(s: &str) -> Result<Verdict> {
        match s {
            "CERTIFIED_21" => Ok(Verdict::Certified21),
            "INCONSISTENT" => Ok(Verdict::Inconsistent),
            _ => s
                .strip_prefix("CERTIFIED_OTHER(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|n| n.parse().ok())
                .map(Verdict::CertifiedOther)
                .ok_or_else(|| Error::InvalidArgument(format!("unknown verdict {s:?}"))),
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Verdict {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Verdict, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveRecord {
    pub a: String,
    pub b: String,
    pub j: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsRecord {
    #[serde(rename = "B_sign")]
    pub b_sign: i8,
    pub c: String,
    pub twist_d: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelRecord {
    pub curve: Option<CurveRecord>,
    pub params: Option<ParamsRecord>,
    pub a4_coeffs: Vec<String>,
    pub a6_coeffs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberRecord {
    pub place: String,
    #[serde(rename = "type")]
    pub kind: String,
    pub euler: u32,
    pub split: Option<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    #[serde(rename = "N1")]
    pub n1: i64,
    #[serde(rename = "N2")]
    pub n2: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Traces {
    pub t1: i64,
    pub t2: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Eigen {
    pub plus_p: Option<u32>,
    pub minus_p: Option<u32>,
}

/// A measured Frobenius spectrum for one model. Field order is the JSON key order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub p: u64,
    pub model: ModelRecord,
    pub fibers: Vec<FiberRecord>,
    pub counts: Counts,
    pub traces: Traces,
    pub eigen: Eigen,
    pub rho_fp: Option<u32>,
    pub rho_fp2: Option<u32>,
    pub artin_invariant: String,
    pub verdict: Verdict,
}

/// One line of the candidate search log.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateRecord {
    #[serde(rename = "B_sign")]
    pub b_sign: Option<i8>,
    pub c: Option<String>,
    pub twist_d: Option<String>,
    #[serde(rename = "N1")]
    pub n1: i64,
    #[serde(rename = "N2")]
    pub n2: i64,
    pub verdict: Verdict,
}

impl From<&Certificate> for CandidateRecord {
    fn from(c: &Certificate) -> CandidateRecord {
        let params = c.model.params.as_ref();
        CandidateRecord {
            b_sign: params.map(|p| p.b_sign),
            c: params.map(|p| p.c.clone()),
            twist_d: params.map(|p| p.twist_d.clone()),
            n1: c.counts.n1,
            n2: c.counts.n2,
            verdict: c.verdict,
        }
    }
}

/// Spectrum read off the two counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Spectrum {
    pub traces: Traces,
    pub eigen: Eigen,
    pub rho_fp: Option<u32>,
    pub rho_fp2: Option<u32>,
    pub verdict: Verdict,
}

/// Solves for the multiplicities of `+p` and `-p` given `#X(F_p)` and `#X(F_{p^2})`.
pub fn spectrum_from_counts(p: u64, n1: i64, n2: i64) -> Spectrum {
    let p = p as i64;
    let q2 = p * p;
    let t1 = n1 - 1 - q2;
    let t2 = n2 - 1 - q2 * q2;
    let all_pm_p = t2 == B2 * q2;
    let consistent = all_pm_p && t1 % p == 0 && t1.abs() <= B2 * p && (B2 + t1 / p) % 2 == 0;
    let traces = Traces { t1, t2 };
    let rho_fp2 = all_pm_p.then_some(B2 as u32);
    if !consistent {
        return Spectrum {
            traces,
            eigen: Eigen {
                plus_p: None,
                minus_p: None,
            },
            rho_fp: None,
            rho_fp2,
            verdict: Verdict::Inconsistent,
        };
    }
    let plus = ((B2 + t1 / p) / 2) as u32;
    let minus = B2 as u32 - plus;
    Spectrum {
        traces,
        eigen: Eigen {
            plus_p: Some(plus),
            minus_p: Some(minus),
        },
        rho_fp: Some(plus),
        rho_fp2,
        verdict: if plus == 21 {
            Verdict::Certified21
        } else {
            Verdict::CertifiedOther(plus)
        },
    }
}

fn model_record(pencil: &Pencil) -> ModelRecord {
    let coeffs = |poly: &crate::poly::Poly| -> Vec<String> {
        poly.coeffs().iter().map(|c| c.to_string()).collect()
    };
    let (curve, params) = match pencil.provenance() {
        Provenance::Inose {
            curve_a,
            curve_b,
            j,
            b_sign,
            c,
            twist_d,
        } => (
            Some(CurveRecord {
                a: curve_a.to_string(),
                b: curve_b.to_string(),
                j: j.to_string(),
            }),
            Some(ParamsRecord {
                b_sign: *b_sign,
                c: c.to_string(),
                twist_d: twist_d.to_string(),
            }),
        ),
        _ => (None, None),
    };
    ModelRecord {
        curve,
        params,
        a4_coeffs: coeffs(pencil.a4()),
        a6_coeffs: coeffs(pencil.a6()),
    }
}

fn fiber_record(f: &FiberDatum) -> FiberRecord {
    FiberRecord {
        place: f.place.to_string(),
        kind: f.class.to_string(),
        euler: f.euler,
        split: f.split,
    }
}

/// Counts the pencil over `F_p` and `F_{p^2}` and reads off its spectrum.
pub fn certify_model(pencil: &Pencil) -> Result<Certificate> {
    certify_model_with(pencil, Engine::default())
}

pub fn certify_model_with(pencil: &Pencil, engine: Engine) -> Result<Certificate> {
    let fibers = classify_fibers(pencil)?;
    let n1 = counting::surface_count_with(pencil, 1, engine, &KodairaNeron)?;
    let n2 = counting::surface_count_with(pencil, 2, engine, &KodairaNeron)?;
    let p = pencil.field().p();
    let s = spectrum_from_counts(p, n1, n2);
    Ok(Certificate {
        p,
        model: model_record(pencil),
        fibers: fibers.iter().map(fiber_record).collect(),
        counts: Counts { n1, n2 },
        traces: s.traces,
        eigen: s.eigen,
        rho_fp: s.rho_fp,
        rho_fp2: s.rho_fp2,
        artin_invariant: ARTIN_INVARIANT.to_string(),
        verdict: s.verdict,
    })
}

/// Certificates for every candidate model of `curve`, in search order.
pub fn certify_family(curve: &Curve) -> Result<Vec<Certificate>> {
    candidate_models(curve)?.iter().map(certify_model).collect()
}

/// A successful search: the certificate and every verdict seen on the way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchRun {
    pub certificate: Certificate,
    pub log: Vec<CandidateRecord>,
}

/// Rejects characteristics 2 and 3, composites, and primes above [`PRIME_CAP`].
pub fn check_prime(p: u64) -> Result<()> {
    if p == 2 || p == 3 {
        return Err(Error::UnsupportedCharacteristic(p));
    }
    if !is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    if p > PRIME_CAP {
        return Err(Error::PrimeOutOfRange { p, max: PRIME_CAP });
    }
    Ok(())
}

/// Searches the candidate family of a trace-zero curve over `F_p` for a model
/// with Picard number 21.
pub fn certify_prime(p: u64) -> Result<SearchRun> {
    certify_prime_with(p, &mut |pencil| certify_model(pencil))
}

/// As [`certify_prime`], with the per-candidate certification supplied by
/// the caller (for caching).
pub fn certify_prime_with(
    p: u64,
    certify: &mut dyn FnMut(&Pencil) -> Result<Certificate>,
) -> Result<SearchRun> {
    check_prime(p)?;
    search_family(&find_supersingular(p)?, certify)
}

/// Certifies the candidate models of `curve` in order until one has Picard
/// number 21.
pub fn search_family(
    curve: &Curve,
    certify: &mut dyn FnMut(&Pencil) -> Result<Certificate>,
) -> Result<SearchRun> {
    let p = curve.field().p();
    let mut log = Vec::new();
    for pencil in candidate_models(curve)? {
        let cert = certify(&pencil)?;
        log.push(CandidateRecord::from(&cert));
        if cert.verdict == Verdict::Certified21 {
            return Ok(SearchRun {
                certificate: cert,
                log,
            });
        }
    }
    Err(Error::Falsified {
        p,
        log: Box::new(log),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub runs: Vec<SearchSummary>,
    /// Primes in range outside the supported characteristics.
    pub unsupported: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchSummary {
    pub certificate: Certificate,
    pub candidates_tried: usize,
}

impl SweepReport {
    pub fn all_certified(&self) -> bool {
        self.runs
            .iter()
            .all(|r| r.certificate.verdict == Verdict::Certified21)
    }

    pub fn certificates(&self) -> impl Iterator<Item = &Certificate> {
        self.runs.iter().map(|r| &r.certificate)
    }
}

/// Runs the search for every prime in `[p_min, p_max]`. Characteristics 2
/// and 3 are listed as unsupported; any falsified prime aborts the sweep.
pub fn sweep(p_min: u64, p_max: u64) -> Result<SweepReport> {
    sweep_with(p_min, p_max, &mut |pencil| certify_model(pencil))
}

pub fn sweep_with(
    p_min: u64,
    p_max: u64,
    certify: &mut dyn FnMut(&Pencil) -> Result<Certificate>,
) -> Result<SweepReport> {
    if p_max > PRIME_CAP {
        return Err(Error::PrimeOutOfRange {
            p: p_max,
            max: PRIME_CAP,
        });
    }
    if p_min > p_max {
        return Err(Error::InvalidArgument(format!(
            "empty range [{p_min}, {p_max}]"
        )));
    }
    let mut report = SweepReport {
        runs: Vec::new(),
        unsupported: Vec::new(),
    };
    for p in (p_min..=p_max).filter(|&p| is_prime(p)) {
        if p < 5 {
            report.unsupported.push(p);
            continue;
        }
        let run = certify_prime_with(p, certify)?;
        report.runs.push(SearchSummary {
            certificate: run.certificate,
            candidates_tried: run.log.len(),
        });
    }
    Ok(report)
}

/// Kummer surface `Km(E x E)` checked against the rank ledger of its
/// isotrivial fibration: four I0* fibers plus a Mordell-Weil lattice
/// isomorphic to `Hom(E, E)`, of rank 4 geometrically and rank 2 over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KummerReport {
    pub p: u64,
    pub curve: CurveRecord,
    /// Rational roots of the 2-division cubic.
    pub rational_two_torsion: u32,
    #[serde(rename = "N1")]
    pub n1: i64,
    #[serde(rename = "N2")]
    pub n2: i64,
    pub expected_n1: i64,
    pub expected_n2: i64,
    pub mw_rank_fp: i64,
    pub mw_rank_fp2: i64,
}

/// Curve used for the Kummer check: a trace-zero curve with full rational
/// 2-torsion when one exists (`p = 3 mod 4`), else [`find_supersingular`].
pub fn kummer_curve(p: u64) -> Result<Curve> {
    match find_supersingular_full_two_torsion(p)? {
        Some(e) => Ok(e),
        None => find_supersingular(p),
    }
}

pub fn verify_kummer_ranks(p: u64) -> Result<KummerReport> {
    verify_kummer_ranks_with(p, &KodairaNeron)
}

/// Trace of Frobenius (divided by `q`) on the trivial lattice of the
/// Kummer fibration when `r` roots of the shared 2-division cubic are rational:
/// zero section and fiber, plus central component and `r` rational
/// non-identity leaves at each of the `1 + r` rational singular places.
fn kummer_trivial_trace(r: i64) -> i64 {
    2 + (1 + r) * (1 + r)
}

pub fn verify_kummer_ranks_with(p: u64, corrections: &dyn FiberCorrection) -> Result<KummerReport> {
    check_prime(p)?;
    let e = kummer_curve(p)?;
    let model = kummer_model(&e, &e)?;
    let n1 = kummer_count_with(&model, 1, Engine::default(), corrections)?;
    let n2 = kummer_count_with(&model, 2, Engine::default(), corrections)?;
    let r = e.two_torsion_roots().len() as i64;
    let pi = p as i64;
    let q2 = pi * pi;
    // Mordell-Weil: Frobenius acts on Hom(E, E) (x) Q with eigenvalues +-1,
    // two of each, so its trace is 0 over F_p; over F_{p^2} everything is
    // rational (trivial lattice 18, Mordell-Weil 4).
    let expected_n1 = 1 + q2 + pi * kummer_trivial_trace(r);
    let expected_n2 = 1 + B2 * q2 + q2 * q2;
    let mw_trace1 = (n1 - 1 - q2) / pi - kummer_trivial_trace(r);
    let mw_trace2 = (n2 - 1 - q2 * q2) / q2 - kummer_trivial_trace(3);
    let report = KummerReport {
        p,
        curve: CurveRecord {
            a: e.a().to_string(),
            b: e.b().to_string(),
            j: e.j_invariant().to_string(),
        },
        rational_two_torsion: r as u32,
        n1,
        n2,
        expected_n1,
        expected_n2,
        mw_rank_fp: (4 + mw_trace1) / 2,
        mw_rank_fp2: (4 + mw_trace2) / 2,
    };
    if n1 != expected_n1 || n2 != expected_n2 || report.mw_rank_fp != 2 || report.mw_rank_fp2 != 4 {
        return Err(Error::ReportedMismatch {
            p,
            n1,
            n2,
            expected_n1,
            expected_n2,
        });
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Splitting {
    Inert,
    Split,
    Ramified,
}

impl fmt::Display for Splitting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Splitting::Inert => "inert",
            Splitting::Split => "split",
            Splitting::Ramified => "ramified",
        })
    }
}

/// Behaviour of an odd prime `p` in `Q(sqrt d)`, from the Kronecker symbol `(d | p)`.
pub fn inert_check(d: i64, p: u64) -> Result<Splitting> {
    if p == 2 || !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not an odd prime")));
    }
    Ok(match legendre(d, p) {
        -1 => Splitting::Inert,
        1 => Splitting::Split,
        _ => Splitting::Ramified,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrosscheckRow {
    pub p: u64,
    pub trace: i64,
    pub splitting: Splitting,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrosscheckTable {
    pub d: i64,
    pub rows: Vec<CrosscheckRow>,
}

/// The CM curve with discriminant `d`: `y^2 = x^3 + 1` for `-3`, `y^2 = x^3 - x` for `-4`.
pub fn cm_curve(d: i64, p: u64) -> Result<Curve> {
    let k = Field::prime(p)?;
    match d {
        -3 => Curve::from_ints(&k, 0, 1),
        -4 => Curve::from_ints(&k, -1, 0),
        _ => Err(Error::InvalidArgument(format!(
            "cross-check needs d = -3 or -4, got {d}"
        ))),
    }
}

/// For each good prime `5 <= p <= p_max`: the CM curve has trace zero over
/// `F_p` exactly when `p` is inert in `Q(sqrt d)`.
pub fn cm_crosscheck(d: i64, p_max: u64) -> Result<CrosscheckTable> {
    if d != -3 && d != -4 {
        return Err(Error::InvalidArgument(format!(
            "cross-check needs d = -3 or -4, got {d}"
        )));
    }
    let mut rows = Vec::new();
    for p in (5..=p_max).filter(|&p| is_prime(p)) {
        let trace = cm_curve(d, p)?.trace();
        let splitting = inert_check(d, p)?;
        let agree = (trace == 0) == (splitting == Splitting::Inert);
        if !agree {
            return Err(Error::CrosscheckFailed { d, p });
        }
        rows.push(CrosscheckRow {
            p,
            trace,
            splitting,
            agree,
        });
    }
    Ok(CrosscheckTable { d, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectrum_examples() {
        let p = 13u64;
        let pi = p as i64;
        let s = spectrum_from_counts(p, 1 + 20 * pi + pi * pi, 1 + 22 * pi * pi + pi.pow(4));
        assert_eq!(s.verdict, Verdict::Certified21);
        assert_eq!(s.rho_fp, Some(21));
        assert_eq!(s.eigen.minus_p, Some(1));
        assert_eq!(s.rho_fp2, Some(22));
        let s = spectrum_from_counts(p, 1 + 18 * pi + pi * pi, 1 + 22 * pi * pi + pi.pow(4));
        assert_eq!(s.verdict, Verdict::CertifiedOther(20));
        assert_eq!(s.eigen.minus_p, Some(2));
        let s = spectrum_from_counts(p, 1 + 18 * pi + pi * pi + 1, 1 + 22 * pi * pi + pi.pow(4));
        assert_eq!(s.verdict, Verdict::Inconsistent);
        let s = spectrum_from_counts(p, 1 + 20 * pi + pi * pi, 1 + 20 * pi * pi + pi.pow(4));
        assert_eq!(s.verdict, Verdict::Inconsistent);
        assert_eq!(s.rho_fp2, None);
    }

    #[test]
    fn verdict_strings_round_trip() {
        for v in [
            Verdict::Certified21,
            Verdict::CertifiedOther(20),
            Verdict::Inconsistent,
        ] {
            assert_eq!(v.to_string().parse::<Verdict>().unwrap(), v);
        }
        assert!("CERTIFIED".parse::<Verdict>().is_err());
    }

    #[test]
    fn small_primes_certify() {
        let run = certify_prime(5).unwrap();
        assert_eq!(run.certificate.counts, Counts { n1: 126, n2: 1176 });
        let run = certify_prime(11).unwrap();
        assert_eq!(run.certificate.counts, Counts { n1: 342, n2: 17304 });
        assert_eq!(run.certificate.model.curve.as_ref().unwrap().j, "0");
        assert!(matches!(
            certify_prime(3),
            Err(Error::UnsupportedCharacteristic(3))
        ));
        assert!(matches!(certify_prime(9), Err(Error::NonPrime(9))));
        assert!(matches!(
            certify_prime(211),
            Err(Error::PrimeOutOfRange { .. })
        ));
    }

    #[test]
    fn p13_uses_generic_j() {
        let run = certify_prime(13).unwrap();
        let j: u32 = run
            .certificate
            .model
            .curve
            .as_ref()
            .unwrap()
            .j
            .parse()
            .unwrap();
        assert!(j != 0 && j != 1728 % 13);
        assert_eq!(run.certificate.counts.n1, 1 + 20 * 13 + 169);
        let kinds: Vec<&str> = run
            .certificate
            .fibers
            .iter()
            .map(|f| f.kind.as_str())
            .collect();
        assert_eq!(kinds.iter().filter(|k| **k == "II*").count(), 2);
        assert_eq!(kinds.iter().filter(|k| **k == "I2").count(), 1);
    }

    #[test]
    fn inert_examples() {
        assert_eq!(inert_check(-3, 11).unwrap(), Splitting::Inert);
        assert_eq!(inert_check(-4, 13).unwrap(), Splitting::Split);
        assert_eq!(inert_check(-3, 7).unwrap(), Splitting::Split);
        assert_eq!(inert_check(-7, 7).unwrap(), Splitting::Ramified);
        assert!(inert_check(-3, 2).is_err());
    }

    #[test]
    fn crosscheck_small() {
        let t = cm_crosscheck(-3, 11).unwrap();
        let rows: Vec<(u64, bool, Splitting)> = t
            .rows
            .iter()
            .map(|r| (r.p, r.trace == 0, r.splitting))
            .collect();
        assert_eq!(
            rows,
            vec![
                (5, true, Splitting::Inert),
                (7, false, Splitting::Split),
                (11, true, Splitting::Inert)
            ]
        );
        assert_eq!(cm_curve(-3, 7).unwrap().point_count(), 12);
        assert!(cm_crosscheck(-7, 11).is_err());
    }

    #[test]
    fn kummer_p7() {
        let r = verify_kummer_ranks(7).unwrap();
        assert_eq!((r.n1, r.n2), (176, 3480));
        assert_eq!((r.mw_rank_fp, r.mw_rank_fp2), (2, 4));
    }

    #[test]
    fn kummer_one_rational_root() {
        // p = 13: no trace-zero curve has full rational 2-torsion
        let r = verify_kummer_ranks(13).unwrap();
        assert_eq!(r.rational_two_torsion, 1);
        assert_eq!(r.n1, 1 + 169 + 13 * 6);
        assert_eq!(r.mw_rank_fp, 2);
    }
}

// SPDX-License-Identifier: Apache-2.0

//! Report assembly and rendering (pretty text, JSON, CSV).
//!
//! Work items may be computed in parallel; results are always collected in
//! index order so identical inputs render byte-identical output.

use std::fmt::Write as _;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cremona::{CharMatrix, ShapeMatrix};
use crate::dynamics::{iterate, OrbitSequence};
use crate::error::{Error, Result};
use crate::families::Family;
use crate::lattice::DivisorClass;
use crate::verify::{
    cg_shape_matrix, defernex_row, js_shape_matrix, sq2_bound_check, verify_good, DeFernexTable,
    GoodFamily, GoodRayCertificate, SignRow, Sq2BoundCheck, WonderfulReport,
};

pub const DISPLAY_NOTE: &str =
    "decimal values are display only; all decisions use exact arithmetic";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Pretty,
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pretty" => Ok(Format::Pretty),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::Parse(format!("unknown format '{s}'"))),
        }
    }
}

/// Inclusive range `lo..=hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Span {
    pub lo: u32,
    pub hi: u32,
}

impl Span {
    pub fn new(lo: u32, hi: u32) -> Result<Span> {
        if lo > hi {
            return Err(Error::Parse(format!("empty range {lo}..{hi}")));
        }
        Ok(Span { lo, hi })
    }

    pub fn iter(self) -> impl Iterator<Item = u32> + Clone {
        self.lo..=self.hi
    }
}

impl std::str::FromStr for Span {
    type Err = Error;

    /// `a..b` (inclusive) or a single `a`.
    fn from_str(s: &str) -> Result<Self> {
        let num = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad range bound '{t}' in '{s}'")))
        };
        match s.split_once("..") {
            Some((a, b)) => Span::new(num(a)?, num(b.trim_start_matches('='))?),
            None => {
                let v = num(s)?;
                Span::new(v, v)
            }
        }
    }
}

impl std::fmt::Display for Span {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub n: u32,
    pub k: u32,
    pub check: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub family: GoodFamily,
    pub n: Span,
    pub k: Span,
    pub all_good: bool,
    pub certificates: Vec<GoodRayCertificate>,
    pub failures: Vec<Failure>,
    /// Signs of the limit rays against the De Fernex class.
    pub defernex: Option<DeFernexTable>,
    pub note: String,
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Unsupported(format!("thread pool: {e}")))
}

pub fn build_verify_report(
    family: GoodFamily,
    n: Span,
    k: Span,
    jobs: usize,
    digits: u32,
) -> Result<VerifyReport> {
    let items: Vec<(u32, u32)> = n
        .iter()
        .flat_map(|a| k.iter().map(move |b| (a, b)))
        .collect();
    let results: Vec<(u32, u32, Result<GoodRayCertificate>)> = pool(jobs)?.install(|| {
        items
            .par_iter()
            .map(|&(a, b)| (a, b, verify_good(family, a, b)))
            .collect()
    });
    let mut certificates = Vec::new();
    let mut failures = Vec::new();
    for (a, b, r) in results {
        match r {
            Ok(c) if c.is_good() => certificates.push(c),
            Ok(c) => failures.push(Failure {
                n: a,
                k: b,
                check: "certificate".into(),
                detail: c
                    .checks
                    .iter()
                    .filter(|x| !x.holds)
                    .map(|x| x.statement.clone())
                    .collect::<Vec<_>>()
                    .join("; "),
            }),
            Err(Error::Refused { check, detail }) => failures.push(Failure {
                n: a,
                k: b,
                check,
                detail,
            }),
            Err(e) => failures.push(Failure {
                n: a,
                k: b,
                check: "error".into(),
                detail: e.to_string(),
            }),
        }
    }
    let limit = family.limit_family();
    let ns: Vec<u32> = n.iter().filter(|&x| x >= limit.min_n()).collect();
    let defernex = if ns.is_empty() {
        None
    } else {
        Some(parallel_sweep(limit, &ns, jobs, digits)?)
    };
    let bounds_ok = defernex
        .as_ref()
        .is_none_or(|t| t.sq2_bounds.iter().all(|b| b.holds()));
    Ok(VerifyReport {
        family,
        n,
        k,
        all_good: failures.is_empty() && bounds_ok,
        certificates,
        failures,
        defernex,
        note: DISPLAY_NOTE.into(),
    })
}

/// De Fernex sign table computed in parallel, assembled in `n` order.
pub fn parallel_sweep(
    family: Family,
    ns: &[u32],
    jobs: usize,
    digits: u32,
) -> Result<DeFernexTable> {
    let parts: Vec<Result<(SignRow, Option<Sq2BoundCheck>)>> = pool(jobs)?.install(|| {
        ns.par_iter()
            .map(|&n| {
                let row = defernex_row(family, n, digits)?;
                let bound = if family == Family::Sq2 {
                    Some(sq2_bound_check(n)?)
                } else {
                    None
                };
                Ok((row, bound))
            })
            .collect()
    });
    let mut rows = Vec::new();
    let mut sq2_bounds = Vec::new();
    for p in parts {
        let (row, bound) = p?;
        rows.push(row);
        sq2_bounds.extend(bound);
    }
    Ok(DeFernexTable {
        family,
        rows,
        sq2_bounds,
    })
}

fn csv_string(header: &[&str], rows: Vec<Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Unsupported(format!("csv: {e}"));
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(&r).map_err(io)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Unsupported(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("utf8"))
}

fn json_string<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| Error::Parse(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn sign_word(s: i8) -> &'static str {
    match s {
        x if x < 0 => "negative",
        0 => "zero",
        _ => "positive",
    }
}

pub fn render_defernex_pretty(t: &DeFernexTable, out: &mut String) {
    let _ = writeln!(out, "De Fernex signs for {} ({DISPLAY_NOTE})", t.family);
    let _ = writeln!(
        out,
        "{:>4} {:>6} {:>9}  value (display only)",
        "n", "s", "sign"
    );
    for r in &t.rows {
        let _ = writeln!(
            out,
            "{:>4} {:>6} {:>9}  {}",
            r.n,
            r.s,
            sign_word(r.sign),
            r.display
        );
    }
    if !t.sq2_bounds.is_empty() {
        let _ = writeln!(out, "sq2 bound chain:");
        for b in &t.sq2_bounds {
            let _ =
                writeln!(
                out,
                "  n = {:>3}: outer {} inner {} identity {} expression {} 7(-7n^2+24n+22) = {}{}",
                b.n,
                ok(b.outer.2),
                ok(b.inner.2),
                ok(b.identity),
                ok(b.expression_matches),
                b.final_bound,
                if b.n >= 5 {
                    format!(" ({})", if b.final_negative { "negative" } else { "NOT negative" })
                } else {
                    " (checked exactly, n < 5)".into()
                }
            );
        }
    }
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAIL"
    }
}

pub fn defernex_csv_rows(t: &DeFernexTable) -> Vec<Vec<String>> {
    t.rows
        .iter()
        .map(|r| {
            vec![
                r.family.to_string(),
                r.n.to_string(),
                r.s.to_string(),
                r.sign.to_string(),
                r.pairing.to_string(),
                r.display.clone(),
            ]
        })
        .collect()
}

pub const DEFERNEX_CSV_HEADER: [&str; 6] = ["family", "n", "s", "sign", "exact", "display_only"];

pub fn render_defernex(t: &DeFernexTable, format: Format) -> Result<String> {
    match format {
        Format::Json => json_string(t),
        Format::Csv => csv_string(&DEFERNEX_CSV_HEADER, defernex_csv_rows(t)),
        Format::Pretty => {
            let mut s = String::new();
            render_defernex_pretty(t, &mut s);
            Ok(s)
        }
    }
}

pub fn render_verify(r: &VerifyReport, format: Format) -> Result<String> {
    match format {
        Format::Json => json_string(r),
        Format::Csv => {
            let mut rows: Vec<Vec<String>> = r
                .certificates
                .iter()
                .map(|c| {
                    vec![
                        "certificate".into(),
                        r.family.to_string(),
                        c.n.to_string(),
                        c.k.to_string(),
                        "good".into(),
                        c.emptiness.rule.to_string(),
                        c.system.s().to_string(),
                        c.system.degree().to_string(),
                        c.pencil_certificate.steps().to_string(),
                        String::new(),
                    ]
                })
                .collect();
            for f in &r.failures {
                rows.push(vec![
                    "certificate".into(),
                    r.family.to_string(),
                    f.n.to_string(),
                    f.k.to_string(),
                    "refused".into(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    format!("{}: {}", f.check, f.detail),
                ]);
            }
            rows.sort_by_key(|row| {
                (
                    row[2].parse::<u32>().unwrap_or(0),
                    row[3].parse::<u32>().unwrap_or(0),
                )
            });
            if let Some(t) = &r.defernex {
                for d in defernex_csv_rows(t) {
                    rows.push(vec![
                        "defernex".into(),
                        d[0].clone(),
                        d[1].clone(),
                        String::new(),
                        d[3].clone(),
                        String::new(),
                        d[2].clone(),
                        d[4].clone(),
                        String::new(),
                        d[5].clone(),
                    ]);
                }
            }
            csv_string(
                &[
                    "record",
                    "family",
                    "n",
                    "k",
                    "status",
                    "rule",
                    "s",
                    "value",
                    "pencil_steps",
                    "detail",
                ],
                rows,
            )
        }
        Format::Pretty => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "good-ray certificates: family {} n {} k {}",
                r.family, r.n, r.k
            );
            for c in &r.certificates {
                let _ = writeln!(
                    s,
                    "  n = {:>2} k = {:>2}  good  {:<13}  pencil reduction {:>4} steps  {}",
                    c.n,
                    c.k,
                    c.emptiness.rule.to_string(),
                    c.pencil_certificate.steps(),
                    c.system
                );
            }
            for f in &r.failures {
                let _ = writeln!(
                    s,
                    "  n = {:>2} k = {:>2}  REFUSED  {}: {}",
                    f.n, f.k, f.check, f.detail
                );
            }
            if let Some(t) = &r.defernex {
                render_defernex_pretty(t, &mut s);
            }
            let _ = writeln!(
                s,
                "result: {}",
                if r.all_good {
                    "all certificates good"
                } else {
                    "verification failed"
                }
            );
            Ok(s)
        }
    }
}

/// Orbit of the pencil `L_1(1, 0^{s-1})` under the JS (`odd`) or CG
/// (`even`) iteration.
pub fn pencil_orbit(family: Family, n: u32, k_max: u32) -> Result<OrbitSequence> {
    let m = match family {
        Family::Odd => {
            family.check_n(n)?;
            js_shape_matrix(n)?
        }
        Family::Even => {
            family.check_n(n)?;
            cg_shape_matrix(n)?
        }
        _ => {
            return Err(Error::Domain(format!(
                "orbits are defined for odd and even, not {family}"
            )))
        }
    };
    let seed = vec![
        BigInt::from(1),
        BigInt::from(1),
        BigInt::from(0),
        BigInt::from(0),
    ];
    iterate(&m, &seed, k_max as usize)
}

#[derive(Serialize)]
struct OrbitJson<'a> {
    family: Family,
    n: u32,
    matrix: &'a ShapeMatrix,
    terms: Vec<OrbitRow>,
}

#[derive(Serialize, Deserialize)]
pub struct OrbitRow {
    pub k: usize,
    #[serde(with = "crate::arith::json::bigint_vec")]
    pub term: Vec<BigInt>,
    pub class: String,
}

pub fn render_orbit(family: Family, n: u32, o: &OrbitSequence, format: Format) -> Result<String> {
    let rows: Vec<OrbitRow> = (0..o.terms.len())
        .map(|k| OrbitRow {
            k,
            term: o.terms[k].clone(),
            class: o.class(k).expect("in range").to_string(),
        })
        .collect();
    match format {
        Format::Json => json_string(&OrbitJson {
            family,
            n,
            matrix: &o.matrix,
            terms: rows,
        }),
        Format::Csv => csv_string(
            &["k", "d", "a", "b", "c", "class"],
            rows.into_iter()
                .map(|r| {
                    let mut v = vec![r.k.to_string()];
                    v.extend(r.term.iter().map(ToString::to_string));
                    v.push(r.class);
                    v
                })
                .collect(),
        ),
        Format::Pretty => {
            let width = rows
                .iter()
                .flat_map(|r| r.term.iter().map(|x| x.to_string().len()))
                .max()
                .unwrap_or(1);
            let mut s = String::new();
            let _ = writeln!(s, "orbit of (1, 1, 0, 0) for family {family}, n = {n}");
            let _ = writeln!(
                s,
                "{:>3}  {:>w$}  {:>w$}  {:>w$}  {:>w$}  class",
                "k",
                "d",
                "a",
                "b",
                "c",
                w = width
            );
            for r in rows {
                let _ = write!(s, "{:>3}", r.k);
                for x in &r.term {
                    let _ = write!(s, "  {:>w$}", x.to_string(), w = width);
                }
                let _ = writeln!(s, "  {}", r.class);
            }
            Ok(s)
        }
    }
}

pub fn render_wonderful(r: &WonderfulReport, format: Format, digits: u32) -> Result<String> {
    match format {
        Format::Json => json_string(r),
        Format::Csv => csv_string(
            &[
                "family",
                "n",
                "s",
                "limit",
                "matches_closed_form",
                "self_intersection",
                "canonical_pairing",
                "canonical_sign",
                "defernex_sign",
                "defernex_display_only",
            ],
            vec![vec![
                r.family.to_string(),
                r.n.to_string(),
                r.s.to_string(),
                r.limit_class.to_string(),
                r.matches_closed_form.to_string(),
                r.self_intersection.to_string(),
                r.canonical_pairing.to_string(),
                r.canonical_sign.to_string(),
                r.defernex_sign.to_string(),
                r.defernex_pairing.to_decimal(digits),
            ]],
        ),
        Format::Pretty => {
            let mut s = String::new();
            let _ = writeln!(s, "family {}  n = {}  s = {}", r.family, r.n, r.s);
            let _ = writeln!(s, "shape matrix on {}:", r.matrix.shape);
            let _ = write!(s, "{}", r.matrix);
            if let Some(cp) = r.spectrum.get("char_poly_text").and_then(|v| v.as_str()) {
                let _ = writeln!(s, "characteristic polynomial: {cp}");
            }
            for (v, a, g) in &r.convergence.jordan {
                let _ = writeln!(
                    s,
                    "eigenvalue {v} (~{}, display only): algebraic {a}, geometric {g}",
                    v.to_decimal(digits)
                );
            }
            let _ = writeln!(
                s,
                "dominant eigenvalue: {}",
                r.convergence.dominant_eigenvalue
            );
            let _ = writeln!(s, "dominant eigenray: {}", r.base_ray);
            if let Some(rad) = r.uncollision_radius {
                let _ = writeln!(s, "uncollision radius at point 0: {rad}");
            }
            let _ = writeln!(s, "limit: {}", r.limit_class);
            let _ = writeln!(
                s,
                "closed form: {} ({})",
                r.closed_form,
                if r.matches_closed_form {
                    "matches"
                } else {
                    "DISCREPANCY"
                }
            );
            match &r.irrationality_witness {
                Some((i, v)) => {
                    let _ = writeln!(
                        s,
                        "irrational: coordinate {i} of the primitive representative is {v}"
                    );
                }
                None => {
                    let _ = writeln!(s, "irrational: NO");
                }
            }
            let _ = writeln!(s, "self-intersection: {}", r.self_intersection);
            let _ = writeln!(
                s,
                "K-pairing: {} ({}; expected {})",
                r.canonical_pairing,
                sign_word(r.canonical_sign),
                r.expected_canonical_pairing
            );
            let _ = writeln!(
                s,
                "F-pairing: {} ({}; ~{}, display only)",
                r.defernex_pairing,
                sign_word(r.defernex_sign),
                r.defernex_pairing.to_decimal(digits)
            );
            let _ = writeln!(
                s,
                "convergence: seed (1, 1, 0, 0) has dominant coefficient {} != 0",
                r.convergence.dominant_coefficient
            );
            if let Some(g) = r.approximating_family {
                let _ = writeln!(s, "approximated by good rays of family {g} as k grows");
            }
            for id in &r.identifications {
                let _ = writeln!(s, "identification ({}): {}", id.description, id.note);
            }
            Ok(s)
        }
    }
}

#[derive(Serialize)]
struct MatrixJson<'a> {
    kind: &'a str,
    n: Option<u32>,
    matrix: serde_json::Value,
    homaloidal: Option<HomaloidalCheck>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HomaloidalCheck {
    pub homaloidal: DivisorClass,
    pub expected: Option<DivisorClass>,
    pub matches: bool,
}

pub enum MatrixKind<'a> {
    Char(&'a CharMatrix),
    Shape(&'a ShapeMatrix),
}

pub fn render_matrix(
    kind: &str,
    n: Option<u32>,
    m: MatrixKind<'_>,
    homaloidal: Option<HomaloidalCheck>,
    format: Format,
) -> Result<String> {
    match format {
        Format::Json => json_string(&MatrixJson {
            kind,
            n,
            matrix: match m {
                MatrixKind::Char(c) => serde_json::to_value(c),
                MatrixKind::Shape(c) => serde_json::to_value(c),
            }
            .map_err(|e| Error::Parse(e.to_string()))?,
            homaloidal,
        }),
        Format::Csv => {
            let rows = match m {
                MatrixKind::Char(c) => c.rows().to_vec(),
                MatrixKind::Shape(c) => c.rows.clone(),
            };
            let width = rows.first().map_or(0, Vec::len);
            let header: Vec<String> = (0..width).map(|j| format!("c{j}")).collect();
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            csv_string(
                &header,
                rows.into_iter()
                    .map(|r| r.iter().map(ToString::to_string).collect())
                    .collect(),
            )
        }
        Format::Pretty => {
            let mut s = String::new();
            let _ = match n {
                Some(n) => writeln!(s, "{kind} (n = {n})"),
                None => writeln!(s, "{kind}"),
            };
            let _ = match m {
                MatrixKind::Char(c) => write!(s, "{c}"),
                MatrixKind::Shape(c) => write!(s, "{c}"),
            };
            if let Some(h) = homaloidal {
                let _ = write!(s, "homaloidal net: {}", h.homaloidal);
                let _ = match &h.expected {
                    Some(e) if h.matches => writeln!(s, " (matches {e})"),
                    Some(e) => writeln!(s, " (MISMATCH, expected {e})"),
                    None => writeln!(s),
                };
            }
            Ok(s)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spans() {
        assert_eq!("2..4".parse::<Span>().unwrap(), Span { lo: 2, hi: 4 });
        assert_eq!("3".parse::<Span>().unwrap(), Span { lo: 3, hi: 3 });
        assert_eq!("1..=2".parse::<Span>().unwrap(), Span { lo: 1, hi: 2 });
        assert!("4..2".parse::<Span>().is_err());
        assert!("a..2".parse::<Span>().is_err());
    }

    #[test]
    fn verify_report_is_ordered_regardless_of_jobs() {
        let n = Span::new(2, 3).unwrap();
        let k = Span::new(1, 3).unwrap();
        let a = build_verify_report(GoodFamily::Even, n, k, 1, 12).unwrap();
        let b = build_verify_report(GoodFamily::Even, n, k, 4, 12).unwrap();
        assert!(a.all_good);
        assert_eq!(
            render_verify(&a, Format::Json).unwrap(),
            render_verify(&b, Format::Json).unwrap()
        );
    }

    #[test]
    fn orbit_row_one() {
        let o = pencil_orbit(Family::Odd, 2, 3).unwrap();
        let s = render_orbit(Family::Odd, 2, &o, Format::Pretty).unwrap();
        assert!(s.contains("L_13(9, 4^4, 2^6)"), "{s}");
    }
}

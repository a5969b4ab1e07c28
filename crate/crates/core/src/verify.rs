// SPDX-License-Identifier: Apache-2.0

//! Certificate-producing checks for pencils, good rays and wonderful rays.
//!
//! Emptiness is never decided by computing dimensions of linear systems.
//! The only accepted arguments are the three uncollision rules, each backed
//! by a pencil certificate and an inequality that is linear in the multiple
//! `m` and checked for all `m >= 1` at once.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::json::bigint_vec;
use crate::arith::{QuadNum, Rational, TowerNum};
use crate::cremona::{cg_family, cremona_reduce, js_family, shape_action, Reduction, ShapeMatrix};
use crate::dynamics::{certify_convergence, dominant_ray, iterate, ConvergenceCertificate, Ray};
use crate::error::{Error, Result};
use crate::families::{self, Family};
use crate::lattice::{DivisorClass, MultiplicityProfile};

/// The compressed action of `JS_n` on `L_d(a, b^{2n}, c^6)`.
pub fn js_shape_matrix(n: u32) -> Result<ShapeMatrix> {
    shape_action(&js_family(n)?, &families::odd_shape(n))
}

/// The compressed action of `CG_n` on `L_d(a, b^7, c^{2n})`.
pub fn cg_shape_matrix(n: u32) -> Result<ShapeMatrix> {
    shape_action(&cg_family(n)?, &families::even_shape(n))
}

fn seed() -> Vec<BigInt> {
    vec![BigInt::one(), BigInt::one(), BigInt::zero(), BigInt::zero()]
}

/// A Cremona reduction of a class to the pencil of lines through a point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PencilCertificate {
    pub system: DivisorClass,
    pub reduction: Reduction,
    /// Index of the point carrying multiplicity 1 in the reduced class.
    pub base_point: usize,
}

impl PencilCertificate {
    pub fn steps(&self) -> usize {
        self.reduction.steps.len()
    }

    /// Re-checks the trace with full characteristic matrices.
    pub fn validate(&self) -> Result<bool> {
        Ok(self.reduction.replay()? && is_line_pencil(&self.reduction.reduced).is_some())
    }
}

/// `Some(i)` when `x = L_1(1 at i, 0 elsewhere)`.
fn is_line_pencil(x: &DivisorClass) -> Option<usize> {
    if x.degree() != &QuadNum::one() {
        return None;
    }
    let ones: Vec<usize> = x
        .mults()
        .iter()
        .enumerate()
        .filter(|(_, m)| !m.is_zero())
        .map(|(i, _)| i)
        .collect();
    match ones.as_slice() {
        [i] if x.mults()[*i] == QuadNum::one() => Some(*i),
        _ => None,
    }
}

pub fn certify_pencil(x: &DivisorClass) -> Result<PencilCertificate> {
    let reduction = cremona_reduce(x)?;
    match is_line_pencil(&reduction.reduced) {
        Some(base_point) if !reduction.non_effective => Ok(PencilCertificate {
            system: x.clone(),
            reduction,
            base_point,
        }),
        _ => Err(Error::NotALinePencil(format!(
            "{x} reduces to {}",
            reduction.reduced
        ))),
    }
}

/// `coeff * m + constant`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearInM {
    #[serde(with = "crate::arith::json::bigint")]
    pub coeff: BigInt,
    #[serde(with = "crate::arith::json::bigint")]
    pub constant: BigInt,
}

impl LinearInM {
    pub fn new(coeff: impl Into<BigInt>, constant: impl Into<BigInt>) -> Self {
        LinearInM {
            coeff: coeff.into(),
            constant: constant.into(),
        }
    }

    fn sub(&self, other: &LinearInM) -> LinearInM {
        LinearInM {
            coeff: &self.coeff - &other.coeff,
            constant: &self.constant - &other.constant,
        }
    }

    /// Positive for every integer `m >= 1`.
    pub fn positive_for_all_m(&self) -> bool {
        !self.coeff.is_negative() && (&self.coeff + &self.constant).is_positive()
    }
}

impl fmt::Display for LinearInM {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.coeff.is_zero(), self.constant.is_zero()) {
            (true, _) => write!(f, "{}", self.constant),
            (false, true) => write!(f, "{}m", self.coeff),
            (false, false) if self.constant.is_negative() => {
                write!(f, "{}m - {}", self.coeff, -&self.constant)
            }
            _ => write!(f, "{}m + {}", self.coeff, self.constant),
        }
    }
}

/// `lhs(m) > rhs(m)` for all `m >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inequality {
    pub label: String,
    pub lhs: LinearInM,
    pub rhs: LinearInM,
    pub holds: bool,
}

impl Inequality {
    pub fn new(label: impl Into<String>, lhs: LinearInM, rhs: LinearInM) -> Self {
        let holds = lhs.sub(&rhs).positive_for_all_m();
        Inequality {
            label: label.into(),
            lhs,
            rhs,
            holds,
        }
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} > {} for all m >= 1",
            self.label, self.lhs, self.rhs
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EmptinessRule {
    #[serde(rename = "R2_PENCIL")]
    R2Pencil,
    #[serde(rename = "R3_PENCIL")]
    R3Pencil,
    #[serde(rename = "R_GE_4_NAGATA")]
    RGe4Nagata,
}

impl fmt::Display for EmptinessRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EmptinessRule::R2Pencil => "R2_PENCIL",
            EmptinessRule::R3Pencil => "R3_PENCIL",
            EmptinessRule::RGe4Nagata => "R_GE_4_NAGATA",
        })
    }
}

/// Emptiness of every multiple `m * system`, `m >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmptinessCertificate {
    pub rule: EmptinessRule,
    pub r: u32,
    /// The pencil `P` with `collide(system) = r * P`.
    pub pencil: DivisorClass,
    /// Multiplicity of `P` at the collision point.
    #[serde(with = "crate::arith::json::bigint")]
    pub pencil_multiplicity: BigInt,
    pub inequalities: Vec<Inequality>,
    pub axioms: Vec<String>,
    pub verdict: bool,
}

fn emptiness(r: u32, pencil: &DivisorClass) -> Result<EmptinessCertificate> {
    let (_, mults) = pencil
        .to_integers()
        .ok_or_else(|| Error::domain("pencil must be integral"))?;
    let a = mults[0].clone();
    let rb = BigInt::from(r);
    let (rule, inequalities, axioms) = match r {
        0 | 1 => return Err(Error::domain("uncollision radius must be at least 2")),
        2 => (
            EmptinessRule::R2Pencil,
            vec![Inequality::new(
                "m*a > dim(2m*P) = 2m",
                LinearInM::new(a.clone(), 0),
                LinearInM::new(2, 0),
            )],
            vec!["dim(k*P) = k for a pencil P composed with itself".to_string()],
        ),
        3 => (
            EmptinessRule::R3Pencil,
            vec![
                Inequality::new(
                    "matching conditions 3m*a > 6m",
                    LinearInM::new(BigInt::from(3) * &a, 0),
                    LinearInM::new(6, 0),
                ),
                Inequality::new(
                    "6m > dim(3m*P) = 3m",
                    LinearInM::new(6, 0),
                    LinearInM::new(3, 0),
                ),
            ],
            vec![
                "dim(k*P) = k for a pencil P composed with itself".to_string(),
                "a collision of 9 points of multiplicity mu imposes at least 3*mu matching conditions".to_string(),
            ],
        ),
        _ => (
            EmptinessRule::RGe4Nagata,
            vec![Inequality::new(
                "collided multiplicity r*m*a + 1 > multiplicity of r*m*P at the point, r*m*a",
                LinearInM::new(&rb * &a, 1),
                LinearInM::new(&rb * &a, 0),
            )],
            vec![
                format!("Nagata: for r = {r} > 3 the twist parameter satisfies t >= r*mu + 1"),
                "members of the pencil P have multiplicity exactly a at the collision point".to_string(),
            ],
        ),
    };
    let verdict = inequalities.iter().all(|i| i.holds);
    Ok(EmptinessCertificate {
        rule,
        r,
        pencil: pencil.clone(),
        pencil_multiplicity: a,
        inequalities,
        axioms,
        verdict,
    })
}

/// Good-ray families certified through pencil orbits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GoodFamily {
    /// `G_{n,k}` from the JS orbit; limit `W+_even`.
    Even,
    /// `G'_{n,k}` from the CG orbit; limit `W+_odd`.
    Odd,
    /// `G''_{n,k}`, radius `n+1`.
    Sq4,
    /// `G'''_{n,k}`, radius `n+2`.
    Sq2,
}

impl GoodFamily {
    pub const ALL: [GoodFamily; 4] = [
        GoodFamily::Even,
        GoodFamily::Odd,
        GoodFamily::Sq4,
        GoodFamily::Sq2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GoodFamily::Even => "even",
            GoodFamily::Odd => "odd",
            GoodFamily::Sq4 => "sq4",
            GoodFamily::Sq2 => "sq2",
        }
    }

    pub fn min_n(self) -> u32 {
        match self {
            GoodFamily::Even => 2,
            _ => 1,
        }
    }

    pub fn radius(self, n: u32) -> u32 {
        match self {
            GoodFamily::Even | GoodFamily::Odd => 2,
            GoodFamily::Sq4 => n + 1,
            GoodFamily::Sq2 => n + 2,
        }
    }

    /// The wonderful family approximated as `k` grows.
    pub fn limit_family(self) -> Family {
        match self {
            GoodFamily::Even => Family::EvenPlus,
            GoodFamily::Odd => Family::OddPlus,
            GoodFamily::Sq4 => Family::Sq4,
            GoodFamily::Sq2 => Family::Sq2,
        }
    }

    fn system_name(self) -> &'static str {
        match self {
            GoodFamily::Even => "G",
            GoodFamily::Odd => "G'",
            GoodFamily::Sq4 => "G''",
            GoodFamily::Sq2 => "G'''",
        }
    }
}

impl fmt::Display for GoodFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for GoodFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GoodFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown good-ray family '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub statement: String,
    pub holds: bool,
}

fn check(name: &str, statement: String, holds: bool) -> Check {
    Check {
        name: name.to_string(),
        statement,
        holds,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodRayCertificate {
    pub family: GoodFamily,
    pub n: u32,
    pub k: u32,
    pub r: u32,
    /// `(d, a, b, c)` of the pencil orbit at step `k`.
    #[serde(with = "bigint_vec")]
    pub orbit_term: Vec<BigInt>,
    pub pencil: DivisorClass,
    pub system: DivisorClass,
    pub self_intersection: QuadNum,
    pub degree: QuadNum,
    pub rational: bool,
    pub checks: Vec<Check>,
    pub pencil_certificate: PencilCertificate,
    pub emptiness: EmptinessCertificate,
    pub proof_trace: Vec<String>,
}

impl GoodRayCertificate {
    pub fn is_good(&self) -> bool {
        self.checks.iter().all(|c| c.holds) && self.emptiness.verdict
    }

    pub fn proof_text(&self) -> String {
        let mut s = String::new();
        for line in &self.proof_trace {
            s.push_str(line);
            s.push('\n');
        }
        s
    }
}

fn refuse(c: &Check) -> Error {
    Error::Refused {
        check: c.name.clone(),
        detail: c.statement.clone(),
    }
}

struct OrbitKind {
    js: bool,
}

impl OrbitKind {
    fn matrix(&self, n: u32) -> Result<ShapeMatrix> {
        if self.js {
            js_shape_matrix(n)
        } else {
            cg_shape_matrix(n)
        }
    }

    /// The two conserved quantities with their expected values.
    fn invariants(&self, n: u32, t: &[BigInt]) -> Vec<Check> {
        let nb = BigInt::from(n);
        let (d, a, b, c) = (&t[0], &t[1], &t[2], &t[3]);
        if self.js {
            let v = d - a - BigInt::from(2) * c;
            let w = &nb * b - a;
            vec![
                check(
                    "invariant d-a-2c",
                    format!("d - a - 2c = {v} (expected 0)"),
                    v.is_zero(),
                ),
                check(
                    "invariant nb-a",
                    format!("n*b - a = {w} (expected -1)"),
                    w == BigInt::from(-1),
                ),
            ]
        } else {
            let v = BigInt::from(3) * d - BigInt::from(7) * b - (BigInt::from(3) * &nb + 2) * c;
            let w: BigInt = a - (&nb + 2) * c;
            vec![
                check(
                    "invariant 3d-7b-(3n+2)c",
                    format!("3d - 7b - (3n+2)c = {v} (expected 3)"),
                    v == BigInt::from(3),
                ),
                check(
                    "invariant a-(n+2)c",
                    format!("a - (n+2)c = {w} (expected 1)"),
                    w.is_one(),
                ),
            ]
        }
    }

    fn step_inequality(&self, t: &[BigInt]) -> bool {
        let (b, c) = (&t[2], &t[3]);
        if self.js {
            b > c && !c.is_negative()
        } else {
            BigInt::from(3) * c > *b && !b.is_negative()
        }
    }

    fn step_inequality_text(&self) -> &'static str {
        if self.js {
            "b > c >= 0"
        } else {
            "3c > b >= 0"
        }
    }
}

fn good_certificate(family: GoodFamily, n: u32, k: u32) -> Result<GoodRayCertificate> {
    if n < family.min_n() {
        return Err(Error::Domain(format!(
            "{} requires n >= {}, got {n}",
            family.system_name(),
            family.min_n()
        )));
    }
    let kind = OrbitKind {
        js: family == GoodFamily::Even,
    };
    let r = family.radius(n);
    let m = kind.matrix(n)?;
    let orbit = iterate(&m, &seed(), k as usize)?;
    let t = orbit.term(k as usize).expect("k in range").to_vec();
    let pencil = orbit.class(k as usize).expect("k in range");
    let system = pencil.scale_int(r as i64).uncollide(0, r)?;
    let label = format!("{}_{{{n},{k}}}", family.system_name());
    let pencil_label = if kind.js { "P" } else { "P'" };

    let mut checks = Vec::new();
    let selfint = system.self_intersection();
    checks.push(check(
        "self-intersection",
        format!("{label}^2 = {selfint} (expected 0)"),
        selfint.is_zero(),
    ));
    let degree = system.degree().clone();
    checks.push(check(
        "degree",
        format!("deg {label} = {degree} (expected > 0)"),
        degree.signum() > 0,
    ));
    checks.extend(kind.invariants(n, &t));
    let a = &t[1];
    checks.push(check(
        "a > 2",
        format!(
            "a_{{{n},{k}}} = {a} {} 2",
            if *a > BigInt::from(2) { ">" } else { "<=" }
        ),
        *a > BigInt::from(2),
    ));
    let bad_step =
        (1..=k as usize).find(|&j| !kind.step_inequality(orbit.term(j).expect("in range")));
    checks.push(check(
        "orbit inequality",
        match (k, bad_step) {
            (0, _) => format!(
                "{} along the orbit: no steps (k = 0)",
                kind.step_inequality_text()
            ),
            (_, None) => format!("{} for j = 1..{k}", kind.step_inequality_text()),
            (_, Some(j)) => format!(
                "{} fails at j = {j}: (d, a, b, c) = ({})",
                kind.step_inequality_text(),
                join(orbit.term(j).expect("in range"))
            ),
        },
        k >= 1 && bad_step.is_none(),
    ));
    let collided = system.collide(0, r)?;
    let expected = pencil.scale_int(r as i64);
    checks.push(check(
        "uncollision identity",
        format!("collide_{r}({label}) = {r}*{pencil_label} = {expected}"),
        collided == expected,
    ));
    checks.push(check(
        "rational",
        format!("{label} is an integral class"),
        system.is_integral(),
    ));

    if let Some(c) = checks.iter().find(|c| !c.holds) {
        return Err(refuse(c));
    }

    let pencil_certificate = certify_pencil(&pencil).map_err(|e| Error::Refused {
        check: "pencil".into(),
        detail: e.to_string(),
    })?;
    let emptiness = emptiness(r, &pencil)?;
    if let Some(i) = emptiness.inequalities.iter().find(|i| !i.holds) {
        return Err(Error::Refused {
            check: emptiness.rule.to_string(),
            detail: i.to_string(),
        });
    }

    let mut trace = vec![
        format!(
            "{pencil_label}_{{{n},{k}}} = {pencil} is the image of ({}) under {} step(s) of the orbit from L_1(1, 0^{}).",
            join(&seed()),
            k,
            pencil.s() - 1
        ),
        format!(
            "Greedy Cremona reduction takes {pencil_label}_{{{n},{k}}} to {} in {} quadratic step(s), so it is a pencil of rational curves.",
            pencil_certificate.reduction.reduced,
            pencil_certificate.steps()
        ),
    ];
    for c in &checks {
        trace.push(format!("Checked {}: {}.", c.name, c.statement));
    }
    if family == GoodFamily::Sq4 && r == 2 {
        trace.push(format!("r = 2: {label} is the system G'_{{{n},{k}}}."));
    }
    trace.push(format!(
        "{label} = {system}; colliding its first {} points gives {r}*{pencil_label}_{{{n},{k}}}.",
        r * r
    ));
    for i in &emptiness.inequalities {
        let diff = i.lhs.sub(&i.rhs);
        trace.push(format!(
            "{i}: difference {diff} is positive for every m >= 1."
        ));
    }
    for ax in &emptiness.axioms {
        trace.push(format!("Axiom: {ax}."));
    }
    trace.push(format!(
        "Rule {} applies, so m*{label} is empty for all m >= 1; {label} spans a good ray.",
        emptiness.rule
    ));

    Ok(GoodRayCertificate {
        family,
        n,
        k,
        r,
        orbit_term: t,
        pencil,
        rational: system.is_rational(),
        self_intersection: selfint,
        degree,
        system,
        checks,
        pencil_certificate,
        emptiness,
        proof_trace: trace,
    })
}

fn join(v: &[BigInt]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

/// `G_{n,k} = L_{2d}(a^4, (2b)^{2n}, (2c)^6)`.
pub fn verify_good_even(n: u32, k: u32) -> Result<GoodRayCertificate> {
    good_certificate(GoodFamily::Even, n, k)
}

/// `G'_{n,k} = L_{2d'}(a'^4, (2b')^7, (2c')^{2n})`.
pub fn verify_good_odd(n: u32, k: u32) -> Result<GoodRayCertificate> {
    good_certificate(GoodFamily::Odd, n, k)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SqVariant {
    Sq4,
    Sq2,
}

/// `G''_{n,k}` (radius `n+1`) or `G'''_{n,k}` (radius `n+2`).
pub fn verify_good_sq(n: u32, k: u32, variant: SqVariant) -> Result<GoodRayCertificate> {
    match variant {
        SqVariant::Sq4 => good_certificate(GoodFamily::Sq4, n, k),
        SqVariant::Sq2 => good_certificate(GoodFamily::Sq2, n, k),
    }
}

pub fn verify_good(family: GoodFamily, n: u32, k: u32) -> Result<GoodRayCertificate> {
    good_certificate(family, n, k)
}

/// Limit ray of a wonderful family computed from the Cremona iteration:
/// the dominant eigenray of the shape matrix, uncollided when the family
/// requires it. Returns `(base ray, limit ray, matrix)`.
pub fn wonderful_limit(family: Family, n: u32) -> Result<(Ray, Ray, ShapeMatrix)> {
    family.check_n(n)?;
    let m = if family.is_js_based() {
        js_shape_matrix(n)?
    } else {
        cg_shape_matrix(n)?
    };
    let base = dominant_ray(&m)?;
    let limit = match family.radius(n) {
        Some(r) => base.uncollide(0, r)?,
        None => base.clone(),
    };
    Ok((base, limit, m))
}

/// An alternative identification of a limit, evaluated exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Identification {
    pub description: String,
    pub candidate: Option<DivisorClass>,
    pub matches: bool,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WonderfulReport {
    pub family: Family,
    pub n: u32,
    pub s: usize,
    pub matrix: ShapeMatrix,
    pub spectrum: serde_json::Value,
    pub base_ray: Ray,
    pub uncollision_radius: Option<u32>,
    pub limit_ray: Ray,
    /// The limit ray scaled to the closed form's degree.
    pub limit_class: DivisorClass,
    pub closed_form: DivisorClass,
    pub matches_closed_form: bool,
    /// `(coordinate index, value)`; index 0 is the degree.
    pub irrationality_witness: Option<(usize, QuadNum)>,
    pub self_intersection: QuadNum,
    pub canonical_pairing: QuadNum,
    pub canonical_sign: i8,
    /// `(r^2 - r) * m / r` for uncollided families, else 0.
    pub expected_canonical_pairing: QuadNum,
    pub defernex_pairing: TowerNum,
    pub defernex_sign: i8,
    /// Convergence of the pencil orbit from `(1, 1, 0, 0)`.
    pub convergence: ConvergenceCertificate,
    /// Good family approximating the limit, for uncollided families.
    pub approximating_family: Option<GoodFamily>,
    pub identifications: Vec<Identification>,
}

impl WonderfulReport {
    pub fn is_consistent(&self) -> bool {
        self.matches_closed_form
            && self.self_intersection.is_zero()
            && self.irrationality_witness.is_some()
            && self.canonical_pairing == self.expected_canonical_pairing
    }
}

pub fn wonderful_report(family: Family, n: u32) -> Result<WonderfulReport> {
    let (base, limit, m) = wonderful_limit(family, n)?;
    let closed_form = family.closed_form(n)?;
    let target = closed_form
        .degree()
        .to_rational()
        .ok_or_else(|| Error::domain("closed form with irrational degree"))?;
    let limit_class = limit.scaled_to_degree(&target)?;
    let matches_closed_form = Ray::new(&closed_form)? == limit && limit_class == closed_form;
    let r = family.radius(n);
    let canonical_pairing = limit_class.canonical_pairing();
    let expected_canonical_pairing = match r {
        Some(r) => limit_class.mults()[0].scale(&Rational::from_integer(BigInt::from(r * r - r))),
        None => QuadNum::zero(),
    };
    let defernex_pairing = limit_class.defernex_pairing()?;
    let convergence = certify_convergence(&m, &seed())?;
    let approximating_family = match family {
        Family::Odd | Family::Even => None,
        Family::EvenPlus => Some(GoodFamily::Even),
        Family::OddPlus => Some(GoodFamily::Odd),
        Family::Sq4 => Some(GoodFamily::Sq4),
        Family::Sq2 => Some(GoodFamily::Sq2),
    };
    let mut identifications = Vec::new();
    if family == Family::OddPlus {
        identifications.push(identify_odd_plus(n, &closed_form)?);
    }
    Ok(WonderfulReport {
        family,
        n,
        s: family.s(n),
        spectrum: crate::dynamics::eigen_summary(&crate::dynamics::eigen(&m)?),
        matrix: m,
        base_ray: base,
        uncollision_radius: r,
        irrationality_witness: limit.irrationality_witness(),
        self_intersection: limit_class.self_intersection(),
        canonical_sign: canonical_pairing.signum(),
        canonical_pairing,
        expected_canonical_pairing,
        defernex_sign: defernex_pairing.signum(),
        defernex_pairing,
        limit_ray: limit,
        limit_class,
        closed_form,
        matches_closed_form,
        convergence,
        approximating_family,
        identifications,
    })
}

/// The two readings of the `W+_odd` limit: the uncollision of `W_even`
/// (the limit of the `P'` orbit) and of `W_odd` (as the text states).
fn identify_odd_plus(n: u32, closed: &DivisorClass) -> Result<Identification> {
    let closed_ray = Ray::new(closed)?;
    let even = Ray::new(&families::w_even(n))?.uncollide(0, 2)?;
    let mut out = vec![format!(
        "Uncoll_2(W_even({n}), 1) on {} points: {}",
        even.s(),
        if even == closed_ray {
            "matches"
        } else {
            "differs"
        }
    )];
    let odd_candidate = if n >= 2 {
        let odd = Ray::new(&families::w_odd(n))?.uncollide(0, 2)?;
        out.push(format!(
            "Uncoll_2(W_odd({n}), 1) on {} points (W+_odd lives on {}): {}",
            odd.s(),
            closed.s(),
            if odd == closed_ray {
                "matches"
            } else {
                "differs"
            }
        ));
        Some(odd)
    } else {
        out.push(format!(
            "Uncoll_2(W_odd({n}), 1) is undefined: W_odd needs n >= 2"
        ));
        None
    };
    let target = closed.degree().to_rational().expect("rational degree");
    Ok(Identification {
        description: "limit of G'_{n,k} as k grows".into(),
        matches: even == closed_ray,
        candidate: Some(even.scaled_to_degree(&target)?),
        note: {
            if let Some(o) = odd_candidate {
                debug_assert!(o != closed_ray);
            }
            out.join("; ")
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignRow {
    pub family: Family,
    pub n: u32,
    pub s: usize,
    pub pairing: TowerNum,
    pub sign: i8,
    /// Decimal rendering, display only.
    pub display: String,
}

/// The auxiliary inequalities behind the `W+_sq2` sign estimate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sq2BoundCheck {
    pub n: u32,
    /// `4n^2(n^2+6n+10) < (2n(n+3)+1)^2`.
    pub outer: (String, String, bool),
    /// `49n^4 - 28n^2 > (7n^2-3)^2`.
    pub inner: (String, String, bool),
    /// The bounded expression equals `7(-7n^2+24n+22)`.
    pub identity: bool,
    #[serde(with = "crate::arith::json::bigint")]
    pub final_bound: BigInt,
    /// `final_bound < 0`; required only for `n >= 5`.
    pub final_negative: bool,
    /// The exact pairing equals the displayed expression.
    pub expression_matches: bool,
}

impl Sq2BoundCheck {
    pub fn holds(&self) -> bool {
        self.outer.2
            && self.inner.2
            && self.identity
            && self.expression_matches
            && (self.n < 5 || self.final_negative)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeFernexTable {
    pub family: Family,
    pub rows: Vec<SignRow>,
    pub sq2_bounds: Vec<Sq2BoundCheck>,
}

pub fn defernex_row(family: Family, n: u32, digits: u32) -> Result<SignRow> {
    let (_, limit, _) = wonderful_limit(family, n)?;
    let closed = family.closed_form(n)?;
    let target = closed.degree().to_rational().expect("rational degree");
    let class = limit.scaled_to_degree(&target)?;
    let pairing = class.defernex_pairing()?;
    Ok(SignRow {
        family,
        n,
        s: family.s(n),
        sign: pairing.signum(),
        display: pairing.to_decimal(digits),
        pairing,
    })
}

pub fn sq2_bound_check(n: u32) -> Result<Sq2BoundCheck> {
    let (ol, or) = families::sq2_bound_outer(n);
    let (il, ir) = families::sq2_bound_inner(n);
    let final_bound = families::sq2_final_bound(n);
    let pairing = defernex_row(Family::Sq2, n, 6)?.pairing;
    Ok(Sq2BoundCheck {
        n,
        outer: (ol.to_string(), or.to_string(), ol < or),
        inner: (il.to_string(), ir.to_string(), il > ir),
        identity: families::sq2_bounded_value(n) == Rational::from_integer(final_bound.clone()),
        final_negative: final_bound.is_negative(),
        final_bound,
        expression_matches: pairing == families::sq2_defernex_expression(n),
    })
}

pub fn defernex_sweep(family: Family, ns: impl IntoIterator<Item = u32>) -> Result<DeFernexTable> {
    let mut rows = Vec::new();
    let mut sq2_bounds = Vec::new();
    for n in ns {
        rows.push(defernex_row(family, n, 12)?);
        if family == Family::Sq2 {
            sq2_bounds.push(sq2_bound_check(n)?);
        }
    }
    Ok(DeFernexTable {
        family,
        rows,
        sq2_bounds,
    })
}

/// Uncollision of a profile class at its first block, for callers holding
/// compressed data.
pub fn uncollide_profile(p: &MultiplicityProfile, r: u32) -> Result<DivisorClass> {
    Ok(p.uncollide(0, r)?.expand())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_pencil_certified() {
        let mut m = vec![1];
        m.extend([0; 6]);
        let c = certify_pencil(&DivisorClass::from_ints(1, &m)).unwrap();
        assert_eq!(c.steps(), 0);
        assert!(c.validate().unwrap());
    }

    #[test]
    fn p21_certified() {
        let p = DivisorClass::from_ints(13, &[9, 4, 4, 4, 4, 2, 2, 2, 2, 2, 2]);
        let c = certify_pencil(&p).unwrap();
        assert!(c.steps() > 0);
        assert!(c.validate().unwrap());
    }

    #[test]
    fn cubic_pencil_rejected() {
        let p = DivisorClass::from_ints(3, &[1; 8]);
        assert!(matches!(certify_pencil(&p), Err(Error::NotALinePencil(_))));
    }

    #[test]
    fn good_even_small() {
        let c = verify_good_even(2, 1).unwrap();
        assert!(c.is_good());
        assert_eq!(c.orbit_term, families::a_orbit_first(2).to_vec());
        assert_eq!(c.emptiness.rule, EmptinessRule::R2Pencil);
        assert_eq!(c.system.s(), 14);
    }

    #[test]
    fn good_even_k0_refused_at_a() {
        match verify_good_even(2, 0) {
            Err(Error::Refused { check, detail }) => {
                assert_eq!(check, "a > 2");
                assert!(detail.contains("= 1 <= 2"), "{detail}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn sq_rules() {
        let c = verify_good_sq(1, 1, SqVariant::Sq4).unwrap();
        let d = verify_good_odd(1, 1).unwrap();
        assert_eq!(c.system, d.system);
        assert_eq!(
            verify_good_sq(1, 2, SqVariant::Sq2).unwrap().emptiness.rule,
            EmptinessRule::R3Pencil
        );
        assert_eq!(
            verify_good_sq(3, 1, SqVariant::Sq4).unwrap().emptiness.rule,
            EmptinessRule::RGe4Nagata
        );
    }

    #[test]
    fn linear_in_m() {
        assert!(LinearInM::new(1, 0).positive_for_all_m());
        assert!(LinearInM::new(0, 1).positive_for_all_m());
        assert!(!LinearInM::new(0, 0).positive_for_all_m());
        assert!(!LinearInM::new(-1, 5).positive_for_all_m());
        assert!(!LinearInM::new(2, -2).positive_for_all_m());
    }

    #[test]
    fn even_plus_two() {
        let r = wonderful_report(Family::EvenPlus, 2).unwrap();
        assert!(r.matches_closed_form);
        assert!(r.is_consistent());
        assert_eq!(r.s, 14);
        assert_eq!(r.defernex_sign, -1);
        assert_eq!(r.canonical_sign, 1);
    }

    #[test]
    fn odd_plus_identification() {
        let r = wonderful_report(Family::OddPlus, 1).unwrap();
        assert!(r.matches_closed_form);
        assert_eq!(r.defernex_sign, -1);
        assert!(r.identifications[0].matches);
    }
}

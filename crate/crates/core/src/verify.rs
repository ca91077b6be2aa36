//! Zero-residual evaluation of the area and length identities.
//!
//! Every check records both sides as exact values and passes only when their
//! difference is literally zero. Lengths that may be irrational are compared
//! squared; where a length is known to be rational it is recovered with an
//! exact square root and the un-squared identity is checked as well.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::constructions::{
    bhaskara_closed_form, build_bhaskara, build_choupei, build_proof2, closed_form_lengths,
    ConstructionError, Family, NestedFigure, OrientationString, TriangleSides,
};
use crate::exact::{ExactError, ExactValue, QuadExt, Rational, Scalar, Sign};
use crate::geometry::{
    are_congruent_triangles, are_parallel, is_square, lies_on_segment, shoelace_area,
    similarity_ratio, squared_distance, GeometryError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("ratio 1 makes (1 - x^n)/(1 - x) undefined; the sum of {n} terms is {n}")]
    UnitRatio { n: usize },
    #[error("q² = {0} is not below 1; the sides do not form a triangle")]
    NotContracting(String),
    #[error("{0} must be at least 1")]
    ZeroCount(&'static str),
    #[error("expected a rational length but {0} is not a rational square")]
    IrrationalLength(String),
}

/// A named identity `lhs = rhs` with its exact residual.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub lhs: ExactValue,
    pub rhs: ExactValue,
    pub residual: ExactValue,
    pub pass: bool,
}

impl IdentityCheck {
    pub fn new<S: Scalar>(name: impl Into<String>, lhs: S, rhs: S) -> Self {
        let residual = lhs.clone() - &rhs;
        let pass = residual.is_zero();
        IdentityCheck {
            name: name.into(),
            lhs: lhs.to_exact_value(),
            rhs: rhs.to_exact_value(),
            residual: residual.to_exact_value(),
            pass,
        }
    }

    /// A yes/no geometric predicate, recorded as `[holds] = 1`.
    pub fn predicate(name: impl Into<String>, holds: bool) -> Self {
        let lhs = Rational::from(i64::from(holds));
        IdentityCheck::new(name, lhs, Rational::one())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FigureDescriptor {
    pub family: Family,
    pub a1: Rational,
    pub b1: Rational,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub string: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub figure: FigureDescriptor,
    pub checks: Vec<IdentityCheck>,
    pub all_pass: bool,
}

impl VerificationReport {
    pub fn new(figure: FigureDescriptor, checks: Vec<IdentityCheck>) -> Self {
        let all_pass = checks.iter().all(|c| c.pass);
        VerificationReport { figure, checks, all_pass }
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization is infallible")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fig = &self.figure;
        write!(f, "{} a1={} b1={}", fig.family, fig.a1, fig.b1)?;
        if let Some(s) = &fig.string {
            write!(f, " string={s}")?;
        }
        if let Some(d) = fig.depth {
            write!(f, " depth={d}")?;
        }
        writeln!(f)?;
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            writeln!(
                f,
                "  {} {:<width$}  {} = {}  (residual {})",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.lhs,
                c.rhs,
                c.residual,
            )?;
        }
        let passed = self.checks.iter().filter(|c| c.pass).count();
        write!(f, "{}/{} checks pass", passed, self.checks.len())
    }
}

/// Square root of a rational that is known to be a perfect square.
fn rational_length(sq: &Rational) -> Result<Rational, VerifyError> {
    sq.perfect_square_root()?.ok_or_else(|| VerifyError::IrrationalLength(sq.to_string()))
}

fn sum<S: Scalar>(first: &S, items: impl IntoIterator<Item = S>) -> S {
    items.into_iter().fold(first.zero_like(), |acc, x| acc + &x)
}

/// Area of the outer square computed both directly and as four corner
/// triangles plus the tilted square, whose side is measured as |EF|².
pub fn verify_proof1(sides: &TriangleSides) -> Result<IdentityCheck, VerifyError> {
    let fig = build_choupei(sides, &"1".parse()?)?;
    let layer = &fig.layers[0];
    let lhs = shoelace_area(&layer.square);
    let triangles = sum(&lhs, layer.triangles.iter().map(shoelace_area));
    let v = layer.inner.vertices();
    let c1_sq = squared_distance(&v[2], &v[1]);
    Ok(IdentityCheck::new("proof1: (a1+b1)^2 = 4*(a1*b1/2) + c1^2", lhs, triangles + c1_sq))
}

fn recursive_check(fig: &NestedFigure<Rational>) -> IdentityCheck {
    let lhs = fig.sides.sum().square();
    let mut rhs = Rational::zero();
    for layer in &fig.layers {
        rhs = rhs + Rational::from(4) * &layer.triangle_area;
    }
    rhs = rhs + squared_distance(&fig.innermost().vertices()[0], &fig.innermost().vertices()[1]);
    IdentityCheck::new(
        format!("recursive: (a1+b1)^2 = sum_k 2*a_k*b_k + c_{}^2", fig.depth()),
        lhs,
        rhs,
    )
}

/// `(a₁+b₁)² = 2a₁b₁ + … + 2aₙbₙ + cₙ²` with every term measured from the
/// figure for string `s`.
pub fn verify_recursive(
    sides: &TriangleSides,
    s: &OrientationString,
) -> Result<IdentityCheck, VerifyError> {
    Ok(recursive_check(&build_choupei(sides, s)?))
}

fn closed_form_checks(fig: &NestedFigure<Rational>) -> Vec<IdentityCheck> {
    let sides = &fig.sides;
    let mut checks = Vec::with_capacity(5 * fig.depth());
    for (k, layer) in fig.layers.iter().enumerate() {
        let n = k + 1;
        let (a, b, c) = closed_form_lengths(sides, n);
        checks.push(IdentityCheck::new(format!("closed form: a_{n}^2"), layer.a_n_sq.clone(), a));
        checks.push(IdentityCheck::new(format!("closed form: b_{n}^2"), layer.b_n_sq.clone(), b));
        checks.push(IdentityCheck::new(format!("closed form: c_{n}^2"), layer.c_n_sq.clone(), c));
    }
    for (k, pair) in fig.layers.windows(2).enumerate() {
        let (cur, next) = (&pair[0], &pair[1]);
        let n = k + 1;
        // (aₙ + bₙ)² = aₙ² + bₙ² + 2aₙbₙ, and aₙbₙ = 2·area.
        let sum_sq = |l: &crate::constructions::Layer<Rational>| {
            &l.a_n_sq + &l.b_n_sq + Rational::from(4) * &l.triangle_area
        };
        checks.push(IdentityCheck::new(
            format!("recurrence: a_{}^2 (a_{n}+b_{n})^2 = a_{n}^2 c_{n}^2", n + 1),
            &next.a_n_sq * sum_sq(cur),
            &cur.a_n_sq * &cur.c_n_sq,
        ));
        checks.push(IdentityCheck::new(
            format!("recurrence: b_{}^2 (a_{n}+b_{n})^2 = b_{n}^2 c_{n}^2", n + 1),
            &next.b_n_sq * sum_sq(cur),
            &cur.b_n_sq * &cur.c_n_sq,
        ));
        checks.push(IdentityCheck::new(
            format!("recurrence: c_{}^2 (a_{n}+b_{n})^2 = c_{n}^4", n + 1),
            &next.c_n_sq * sum_sq(cur),
            cur.c_n_sq.square(),
        ));
        checks.push(IdentityCheck::new(
            format!("recurrence: c_{n}^2 = (a_{}+b_{})^2", n + 1, n + 1),
            cur.c_n_sq.clone(),
            sum_sq(next),
        ));
    }
    checks
}

/// Measured per-layer squared lengths against the closed forms, plus the
/// one-step recurrences in squared form.
pub fn verify_closed_form(
    sides: &TriangleSides,
    s: &OrientationString,
) -> Result<Vec<IdentityCheck>, VerifyError> {
    Ok(closed_form_checks(&build_choupei(sides, s)?))
}

/// Finite partial sums, the exact geometric tail, and the limit identity.
pub fn verify_fractal1_tail(
    sides: &TriangleSides,
    n: usize,
) -> Result<Vec<IdentityCheck>, VerifyError> {
    if n == 0 {
        return Err(VerifyError::ZeroCount("n"));
    }
    let q_sq = sides.q_sq();
    if q_sq >= &Rational::one() {
        return Err(VerifyError::NotContracting(q_sq.to_string()));
    }
    let two_ab = Rational::from(2) * sides.a1() * sides.b1();
    let one_minus = Rational::one() - q_sq;
    let total = sides.sum().square();
    let c_n_sq = closed_form_lengths(sides, n).2;

    let mut partial = Rational::zero();
    let mut power = Rational::one();
    for _ in 0..n {
        partial = partial + &two_ab * &power;
        power = &power * q_sq;
    }
    // `power` is now (q²)ⁿ.
    Ok(vec![
        IdentityCheck::new(
            format!("fractal1: sum_(k<={n}) 2*a_k*b_k + c_{n}^2 = (a1+b1)^2"),
            partial + &c_n_sq,
            total.clone(),
        ),
        IdentityCheck::new(
            format!("fractal1: 2*a1*b1*q^{}/(1-q^2) = c_{n}^2", 2 * n),
            &two_ab * &power / &one_minus,
            c_n_sq,
        ),
        IdentityCheck::new("fractal1: 2*a1*b1/(1-q^2) = (a1+b1)^2", &two_ab / &one_minus, total),
    ])
}

fn proof2_stage_checks(
    fig: &crate::constructions::Proof2Figure,
    stage_index: usize,
) -> Result<Vec<IdentityCheck>, VerifyError> {
    let stage = &fig.feet[stage_index];
    let k = stage.level;
    let mut checks = Vec::new();
    for (i, name) in [(2usize, "EM"), (0, "GN"), (1, "F foot"), (3, "H foot")] {
        let label = if k == 1 { name.to_string() } else { format!("corner {i} foot") };
        checks.push(IdentityCheck::new(
            format!("proof2 stage {k}: |{label}|^2 = d_{k}^2"),
            squared_distance(&stage.corners[i], &stage.feet[i]),
            stage.d.square(),
        ));
        let (from, to) = &stage.carriers[i];
        checks.push(IdentityCheck::new(
            format!("proof2 stage {k}: ({label}) . carrier = 0"),
            stage.corners[i].sub(&stage.feet[i]).dot(&to.sub(from)),
            Rational::zero(),
        ));
    }
    Ok(checks)
}

/// The second construction at depth 1: feet lengths, the side relation
/// `a₁+b₁ = 2d₁ + c₂` (squared and un-squared), the double area of △ELI and
/// the predicate suite.
pub fn verify_proof2(sides: &TriangleSides) -> Result<Vec<IdentityCheck>, VerifyError> {
    let fig = build_proof2(sides, 1)?;
    let outer = &fig.base.layers[0];
    let tilted = &fig.base.layers[1];
    let stage = &fig.feet[0];
    let d1 = stage.d.clone();
    let s = sides.sum();

    let mut checks = proof2_stage_checks(&fig, 0)?;

    // Points named as in the labelled drawing.
    let (a, b) = (&outer.square.vertices()[3], &outer.square.vertices()[2]);
    let (e, g) = (&tilted.square.vertices()[2], &tilted.square.vertices()[0]);
    let ijkl = &tilted.inner;
    let (j, i, l) = (&ijkl.vertices()[0], &ijkl.vertices()[1], &ijkl.vertices()[2]);
    let (m, n) = (stage.m(), stage.n());

    let c2_sq = squared_distance(i, j);
    checks.push(IdentityCheck::new(
        "proof2: (a1+b1-c2)^2 = (2*d1)^2",
        s.square() + &c2_sq - Rational::from(2) * &s * rational_length(&c2_sq)?,
        (Rational::from(2) * &d1).square(),
    ));
    let c2 = rational_length(&c2_sq)?;
    checks.push(IdentityCheck::predicate(
        "proof2: a1+b1-c2 > 0",
        (&s - &c2).sign() == Sign::Positive,
    ));
    checks.push(IdentityCheck::new(
        "proof2: a1+b1 = |EM| + |IJ| + |GN|",
        s.clone(),
        rational_length(&squared_distance(e, m))? + &c2 + rational_length(&squared_distance(g, n))?,
    ));
    checks.push(IdentityCheck::new("proof2: a1+b1 = 2*d1 + c2", s.clone(), Rational::from(2) * &d1 + &c2));
    checks.push(IdentityCheck::new(
        "proof2: d1 = a1*b1/(a1+b1)",
        rational_length(&squared_distance(e, m))?,
        sides.a1() * sides.b1() / &s,
    ));

    // Twice the area of △ELI, squared, two ways.
    let el_sq = squared_distance(e, l);
    let ei_sq = squared_distance(e, i);
    let li_sq = squared_distance(l, i);
    checks.push(IdentityCheck::new(
        "proof2: (|EL||EI|)^2 = (|LI| d1)^2",
        &el_sq * &ei_sq,
        &li_sq * d1.square(),
    ));
    let eli = &tilted.triangles[2];
    checks.push(IdentityCheck::new(
        "proof2: area(ELI) = c1^2*a1*b1/(2(a1+b1)^2)",
        shoelace_area(eli),
        sides.c1_sq() * sides.a1() * sides.b1() / (Rational::from(2) * s.square()),
    ));
    checks.push(IdentityCheck::new(
        "proof2: area(ELI) = c1^2*d1/(2(a1+b1))",
        shoelace_area(eli),
        sides.c1_sq() * &d1 / (Rational::from(2) * &s),
    ));

    checks.push(IdentityCheck::predicate("proof2: IJKL is a square", is_square(ijkl)?));
    checks.push(IdentityCheck::predicate("proof2: EFGH is a square", is_square(&tilted.square)?));
    checks.push(IdentityCheck::predicate("proof2: AB || LI", are_parallel(a, b, l, i)?));
    for (t, name) in tilted.triangles.iter().zip(["GKJ", "FJI", "ELI", "HLK"]) {
        checks.push(IdentityCheck::predicate(
            format!("proof2: ELI congruent to {name}"),
            are_congruent_triangles(eli, t)?,
        ));
    }
    for (t, name) in outer.triangles.iter().zip(["DHG", "CGF", "BFE", "AEH"]) {
        let ratio = similarity_ratio(t, eli)?;
        checks.push(IdentityCheck::predicate(
            format!("proof2: ELI similar to {name} with ratio q^2"),
            ratio.as_ref() == Some(sides.q_sq()),
        ));
    }
    Ok(checks)
}

/// `a₁+b₁ − 2(d₁+…+d_depth) = c_{2·depth}`, using the measured feet and the
/// measured side of the innermost (axis-aligned) square.
pub fn verify_d_telescoping(
    sides: &TriangleSides,
    depth: usize,
) -> Result<IdentityCheck, VerifyError> {
    let fig = build_proof2(sides, depth)?;
    let mut lhs = sides.sum();
    for stage in &fig.feet {
        let d = rational_length(&squared_distance(&stage.corners[2], stage.m()))?;
        lhs = lhs - Rational::from(2) * d;
    }
    let inner = fig.base.innermost().vertices();
    let rhs = rational_length(&squared_distance(&inner[0], &inner[1]))?;
    Ok(IdentityCheck::new(
        format!("d telescoping: a1+b1 - 2*sum_(k<={depth}) d_k = c_{}", 2 * depth),
        lhs,
        rhs,
    ))
}

/// Bhāskara decomposition over Q(√c₁²) at every depth, its base case and the
/// limit identity `2a₁b₁/(1−r²) = c₁²`.
pub fn verify_bhaskara(sides: &TriangleSides, depth: usize) -> Result<Vec<IdentityCheck>, VerifyError> {
    let fig = build_bhaskara(sides, depth)?;
    let d = sides.c1_sq();
    let lift = |r: Rational| QuadExt::from_rational(r, d).expect("radicand is positive");
    let outer_area = shoelace_area(fig.outer_square());
    let mut checks = Vec::new();

    checks.push(IdentityCheck::new(
        "bhaskara: c1^2 = 2*a1*b1 + (b1-a1)^2",
        fig.layers[0].c_n_sq.clone(),
        fig.layers[0].triangle_area.scale(&Rational::from(4)) + shoelace_area(&fig.layers[0].inner),
    ));
    let mut triangles = outer_area.zero_like();
    for (k, layer) in fig.layers.iter().enumerate() {
        let n = k + 1;
        triangles = triangles + sum(&outer_area, layer.triangles.iter().map(shoelace_area));
        checks.push(IdentityCheck::new(
            format!("bhaskara: c1^2 = triangles(1..={n}) + inner square {n}"),
            outer_area.clone(),
            triangles.clone() + shoelace_area(&layer.inner),
        ));
        let (a, b, c) = bhaskara_closed_form(sides, n);
        checks.push(IdentityCheck::new(format!("bhaskara: a_{n}^2 = a1^2 r^{}", 2 * k), layer.a_n_sq.clone(), lift(a)));
        checks.push(IdentityCheck::new(format!("bhaskara: b_{n}^2 = b1^2 r^{}", 2 * k), layer.b_n_sq.clone(), lift(b)));
        checks.push(IdentityCheck::new(format!("bhaskara: c_{n}^2 = c1^2 r^{}", 2 * k), layer.c_n_sq.clone(), lift(c)));
    }
    // Closed-form series: c² = Σ 2ab·r^{2(k−1)} + (b−a)²·r^{2(depth−1)}.
    let r_sq = sides.bhaskara_r_sq();
    let two_ab = Rational::from(2) * sides.a1() * sides.b1();
    let series = (0..fig.depth()).fold(Rational::zero(), |acc, k| acc + &two_ab * r_sq.pow(k as u32));
    let residual_square = (sides.b1() - sides.a1()).square() * r_sq.pow(fig.depth() as u32 - 1);
    checks.push(IdentityCheck::new(
        format!("bhaskara: c1^2 = sum_(k<={}) 2ab r^(2(k-1)) + (b-a)^2 r^{}", fig.depth(), 2 * (fig.depth() - 1)),
        sides.c1_sq().clone(),
        series + residual_square,
    ));
    checks.push(IdentityCheck::new(
        "bhaskara: 2*a1*b1/(1-r^2) = c1^2",
        two_ab / (Rational::one() - &r_sq),
        sides.c1_sq().clone(),
    ));
    Ok(checks)
}

/// Reading the telescoped identity backwards gives the finite geometric sum
/// with ratio q².
pub fn geometric_sum_from_pythagoras(
    sides: &TriangleSides,
    n: usize,
) -> Result<Vec<IdentityCheck>, VerifyError> {
    if n == 0 {
        return Err(VerifyError::ZeroCount("n"));
    }
    let x = sides.q_sq();
    let s = sides.sum();
    let two_ab = Rational::from(2) * sides.a1() * sides.b1();
    let powers: Vec<Rational> = (0..n as u32).map(|k| x.pow(k)).collect();
    let geometric = sum(&Rational::zero(), powers.iter().cloned());
    let last = powers.last().expect("n >= 1");

    let expanded = sum(&Rational::zero(), powers.iter().map(|p| &two_ab * p)) + sides.c1_sq() * last;
    let exp = n as u32;
    let quotient = (s.square() - sides.c1_sq().pow(exp) / s.square().pow(exp - 1)) / &two_ab;
    let closed = (Rational::one() - x.pow(exp)) / (Rational::one() - x);
    Ok(vec![
        IdentityCheck::new(
            format!("geometric: (a1+b1)^2 = sum_(k<{n}) 2*a1*b1*q^(2k) + c1^2*q^{}", 2 * (n - 1)),
            s.square(),
            expanded,
        ),
        IdentityCheck::new(
            format!("geometric: ((a1+b1)^2 - c1^{}/(a1+b1)^{})/(2*a1*b1) = sum_(k<{n}) q^(2k)", 2 * n, 2 * n - 2),
            quotient,
            geometric.clone(),
        ),
        IdentityCheck::new(
            format!("geometric: sum_(k<{n}) x^k = (1-x^{n})/(1-x), x = q^2"),
            geometric,
            closed,
        ),
    ])
}

/// `1 + x + … + x^(n−1) = (1 − xⁿ)/(1 − x)` for any rational `x ≠ 1`.
pub fn verify_geometric_sum(x: &Rational, n: usize) -> Result<IdentityCheck, VerifyError> {
    if n == 0 {
        return Err(VerifyError::ZeroCount("n"));
    }
    if x.is_one() {
        return Err(VerifyError::UnitRatio { n });
    }
    let mut lhs = Rational::zero();
    let mut power = Rational::one();
    for _ in 0..n {
        lhs = lhs + &power;
        power = &power * x;
    }
    let rhs = (Rational::one() - power) / (Rational::one() - x);
    Ok(IdentityCheck::new(format!("geometric sum: x = {x}, n = {n}"), lhs, rhs))
}

fn layer_predicates<S: Scalar>(fig: &NestedFigure<S>, ratio_sq: Option<&Rational>) -> Vec<IdentityCheck> {
    let mut checks = Vec::new();
    for (k, layer) in fig.layers.iter().enumerate() {
        let n = k + 1;
        checks.push(IdentityCheck::predicate(
            format!("layer {n}: square is a square"),
            is_square(&layer.square).unwrap_or(false),
        ));
        let congruent = layer
            .triangles
            .iter()
            .all(|t| are_congruent_triangles(&layer.triangles[0], t).unwrap_or(false));
        checks.push(IdentityCheck::predicate(format!("layer {n}: corner triangles congruent"), congruent));
        if fig.family == Family::Choupei {
            let on_edges = layer
                .square
                .edges()
                .zip(layer.inner.vertices())
                .all(|((u, w), p)| lies_on_segment(p, u, w));
            checks.push(IdentityCheck::predicate(format!("layer {n}: inner vertices on edges"), on_edges));
        }
        if let (Some(next), Some(ratio_sq)) = (fig.layers.get(k + 1), ratio_sq) {
            let lifted = layer.triangles[0].vertices()[0].x.lift(ratio_sq);
            let similar = similarity_ratio(&layer.triangles[0], &next.triangles[0])
                .ok()
                .flatten()
                .is_some_and(|r| r == lifted);
            checks.push(IdentityCheck::predicate(
                format!("layers {n},{}: triangles similar with ratio {ratio_sq}", n + 1),
                similar,
            ));
        }
    }
    checks
}

/// Which family to run, with its size parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SuiteParams {
    Choupei(OrientationString),
    Proof2(usize),
    Bhaskara(usize),
}

impl SuiteParams {
    pub fn family(&self) -> Family {
        match self {
            SuiteParams::Choupei(_) => Family::Choupei,
            SuiteParams::Proof2(_) => Family::Proof2,
            SuiteParams::Bhaskara(_) => Family::Bhaskara,
        }
    }
}

/// Every applicable check for one figure, in a fixed order.
pub fn run_suite(sides: &TriangleSides, params: &SuiteParams) -> Result<VerificationReport, VerifyError> {
    let mut descriptor = FigureDescriptor {
        family: params.family(),
        a1: sides.a1().clone(),
        b1: sides.b1().clone(),
        string: None,
        depth: None,
    };
    let mut checks = Vec::new();
    match params {
        SuiteParams::Choupei(s) => {
            descriptor.string = Some(s.to_string());
            let fig = build_choupei(sides, s)?;
            checks.push(verify_proof1(sides)?);
            checks.push(recursive_check(&fig));
            checks.extend(closed_form_checks(&fig));
            checks.extend(verify_fractal1_tail(sides, s.len())?);
            checks.extend(geometric_sum_from_pythagoras(sides, s.len())?);
            checks.extend(layer_predicates(&fig, Some(sides.q_sq())));
        }
        SuiteParams::Proof2(depth) => {
            descriptor.depth = Some(*depth);
            let fig = build_proof2(sides, *depth)?;
            checks.extend(verify_proof2(sides)?);
            for k in 1..fig.feet.len() {
                checks.extend(proof2_stage_checks(&fig, k)?);
            }
            for stage in &fig.feet {
                checks.push(IdentityCheck::new(
                    format!("proof2 stage {}: d_{} = a_{}*b_{}/(a_{}+b_{})", stage.level, stage.level, 2 * stage.level - 1, 2 * stage.level - 1, 2 * stage.level - 1, 2 * stage.level - 1),
                    stage.d.clone(),
                    d_from_layer(&fig.base, 2 * stage.level - 2)?,
                ));
            }
            checks.push(verify_d_telescoping(sides, *depth)?);
            checks.push(recursive_check(&fig.base));
            checks.extend(closed_form_checks(&fig.base));
            checks.extend(layer_predicates(&fig.base, Some(sides.q_sq())));
        }
        SuiteParams::Bhaskara(depth) => {
            let fig = build_bhaskara(sides, *depth)?;
            descriptor.depth = Some(fig.depth());
            checks.extend(verify_bhaskara(sides, *depth)?);
            let r_sq = sides.bhaskara_r_sq();
            checks.extend(layer_predicates(&fig, Some(&r_sq)));
        }
    }
    Ok(VerificationReport::new(descriptor, checks))
}

/// `aₙbₙ/(aₙ+bₙ)` from the measured legs of layer `index` (0-based).
fn d_from_layer(fig: &NestedFigure<Rational>, index: usize) -> Result<Rational, VerifyError> {
    let layer = &fig.layers[index];
    let a = rational_length(&layer.a_n_sq)?;
    let b = rational_length(&layer.b_n_sq)?;
    Ok(&a * &b / (&a + &b))
}

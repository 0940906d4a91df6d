//! Executable replays of the structural facts about the quantum torus:
//! the determinant obstruction for commutative solution fields, the
//! simplicity certificate, constants and trivialization of modules,
//! fundamental-matrix checks, the Tannakian suite and the classical
//! differential warm-up.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::algebra::{tensor as tensor_pair, Element, Pair};
use crate::hopf::{coaction, HopfElement, HopfKey, TensorRH};
use crate::linalg::Matrix;
use crate::module::{QMatrix, QsiModule};
use crate::scalar::{QPoly, QScalar};
use crate::torus::{
    self, in_pv_ring, monomial, sigma, theta, theta1, ExponentWindow, TorusElement, TorusKey,
};

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum VerifyError {
    #[error("input element is zero")]
    ZeroInput,
    #[error("input must lie in the Picard-Vessiot ring (t-exponents >= 0)")]
    NotInPvRing,
    #[error("matrix shapes do not match")]
    ShapeMismatch,
    #[error("certificate replay diverged from the recorded intermediate")]
    ReplayMismatch,
}

// ---------------------------------------------------------------------------
// Commutative system ring and the determinant obstruction
// ---------------------------------------------------------------------------

/// Commutative polynomials in the generators `y_{ab}` of an `n×n`
/// solution matrix, with σ acting through `A_sigma` and θ defined on
/// ordered factor sequences by the twisted Leibniz rule.
///
/// The obstruction operation measures how θ depends on the factor
/// ordering; in a commutative ring the difference must vanish, which
/// forces the determinant relation.
pub struct CommutativeSystemRing {
    n: usize,
    a_sigma: QMatrix,
    a_theta: QMatrix,
}

/// Commutative polynomial: exponent vector over the n^2 generators.
pub type SystemPoly = BTreeMap<Vec<u32>, QScalar>;

impl CommutativeSystemRing {
    pub fn new(a_sigma: QMatrix, a_theta: QMatrix) -> Result<Self, VerifyError> {
        if !a_sigma.is_square() || !a_theta.is_square() || a_sigma.rows != a_theta.rows {
            return Err(VerifyError::ShapeMismatch);
        }
        Ok(CommutativeSystemRing { n: a_sigma.rows, a_sigma, a_theta })
    }

    pub fn num_generators(&self) -> usize {
        self.n * self.n
    }

    /// Generator index of `y_{ab}` (1-based subscripts in the display).
    pub fn gen_index(&self, a: usize, b: usize) -> usize {
        a * self.n + b
    }

    pub fn gen_name(&self, g: usize) -> String {
        format!("y{}{}", g / self.n + 1, g % self.n + 1)
    }

    /// σ(y_{ab}) = Σ_k (A_sigma)_{ak} y_{kb}, as a linear form.
    fn sigma_gen(&self, g: usize) -> Vec<QScalar> {
        self.linear_action(&self.a_sigma, g)
    }

    /// θ(y_{ab}) = Σ_k (A_theta)_{ak} y_{kb}.
    fn theta_gen(&self, g: usize) -> Vec<QScalar> {
        self.linear_action(&self.a_theta, g)
    }

    fn linear_action(&self, m: &QMatrix, g: usize) -> Vec<QScalar> {
        let (a, b) = (g / self.n, g % self.n);
        let mut out = vec![QScalar::zero(); self.num_generators()];
        for k in 0..self.n {
            out[self.gen_index(k, b)] = m[(a, k)].clone();
        }
        out
    }

    fn linear_poly(&self, form: &[QScalar]) -> SystemPoly {
        let mut out = SystemPoly::new();
        for (g, c) in form.iter().enumerate() {
            if !c.is_zero() {
                let mut exp = vec![0u32; self.num_generators()];
                exp[g] = 1;
                out.insert(exp, c.clone());
            }
        }
        out
    }

    fn seq_poly(&self, factors: &[usize]) -> SystemPoly {
        let mut out = poly_one(self.num_generators());
        for &g in factors {
            let mut form = vec![QScalar::zero(); self.num_generators()];
            form[g] = QScalar::one();
            out = poly_mul(&out, &self.linear_poly(&form));
        }
        out
    }

    /// σ extended as a ring endomorphism to a factor sequence.
    fn sigma_seq(&self, factors: &[usize]) -> SystemPoly {
        let mut out = poly_one(self.num_generators());
        for &g in factors {
            out = poly_mul(&out, &self.linear_poly(&self.sigma_gen(g)));
        }
        out
    }

    /// θ on an ordered factor sequence via the left-to-right twisted
    /// Leibniz rule: θ(x·rest) = θ(x)·rest + σ(x)·θ(rest).
    pub fn theta_seq(&self, factors: &[usize]) -> SystemPoly {
        match factors.split_first() {
            None => SystemPoly::new(), // θ(1) = 0
            Some((&x, rest)) => {
                let lead = poly_mul(&self.linear_poly(&self.theta_gen(x)), &self.seq_poly(rest));
                let tail = poly_mul(&self.sigma_seq(&[x]), &self.theta_seq(rest));
                poly_add(&lead, &tail)
            }
        }
    }
}

fn poly_one(nvars: usize) -> SystemPoly {
    let mut out = SystemPoly::new();
    out.insert(vec![0; nvars], QScalar::one());
    out
}

fn poly_add(a: &SystemPoly, b: &SystemPoly) -> SystemPoly {
    let mut out = a.clone();
    for (e, c) in b {
        let entry = out.entry(e.clone()).or_insert_with(QScalar::zero);
        let sum = &*entry + c;
        if sum.is_zero() {
            out.remove(e);
        } else {
            *entry = sum;
        }
    }
    out
}

fn poly_mul(a: &SystemPoly, b: &SystemPoly) -> SystemPoly {
    let mut out = SystemPoly::new();
    for (e1, c1) in a {
        for (e2, c2) in b {
            let exp: Vec<u32> = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
            let prod = c1 * c2;
            let entry = out.entry(exp.clone()).or_insert_with(QScalar::zero);
            let sum = &*entry + &prod;
            if sum.is_zero() {
                out.remove(&exp);
            } else {
                *entry = sum;
            }
        }
    }
    out
}

fn poly_sub(a: &SystemPoly, b: &SystemPoly) -> SystemPoly {
    let neg: SystemPoly = b.iter().map(|(e, c)| (e.clone(), -c)).collect();
    poly_add(a, &neg)
}

/// Canonical form of a relation: clear denominators, divide by the
/// integer content, and flip signs so the lexicographically leading
/// monomial's coefficient has a positive leading q-term.
pub fn normalize_relation(p: &SystemPoly) -> SystemPoly {
    if p.is_empty() {
        return SystemPoly::new();
    }
    let mut den_lcm = QPoly::one();
    for c in p.values() {
        den_lcm = den_lcm.lcm(c.denominator());
    }
    let scale = QScalar::from_poly(den_lcm);
    let cleared: Vec<(Vec<u32>, QPoly)> = p
        .iter()
        .map(|(e, c)| {
            let s = c * &scale;
            debug_assert!(s.denominator() == &QPoly::one());
            (e.clone(), s.numerator().clone())
        })
        .collect();
    let mut content = BigInt::zero();
    for (_, poly) in &cleared {
        content = num_integer::Integer::gcd(&content, &poly.content());
    }
    if content.is_zero() {
        content = BigInt::one();
    }
    // leading = lexicographically greatest exponent vector
    let lead = cleared.iter().map(|(e, _)| e).max().unwrap().clone();
    let lead_poly = &cleared.iter().find(|(e, _)| *e == lead).unwrap().1;
    let flip = lead_poly.leading_coeff().is_negative();
    cleared
        .into_iter()
        .map(|(e, poly)| {
            let mut c = QScalar::from_poly(poly)
                / QScalar::from_poly(QPoly::constant(content.clone()));
            if flip {
                c = -c;
            }
            (e, c)
        })
        .collect()
}

/// For every unordered generator pair, the ordering defect
/// `θ(g·h) − θ(h·g)`; nonzero results are returned normalized and
/// deduplicated, sorted for determinism.
pub fn lemma1_obstruction(
    a_sigma: QMatrix,
    a_theta: QMatrix,
) -> Result<Vec<SystemPoly>, VerifyError> {
    let ring = CommutativeSystemRing::new(a_sigma, a_theta)?;
    let mut out: Vec<SystemPoly> = Vec::new();
    for g in 0..ring.num_generators() {
        for h in g + 1..ring.num_generators() {
            let diff = poly_sub(&ring.theta_seq(&[g, h]), &ring.theta_seq(&[h, g]));
            if !diff.is_empty() {
                let norm = normalize_relation(&diff);
                if !out.contains(&norm) {
                    out.push(norm);
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Renders a relation, factoring out a common scalar when all
/// coefficients agree up to sign.
pub fn render_relation(ring_size: usize, p: &SystemPoly) -> String {
    let n = (ring_size as f64).sqrt() as usize;
    let gen_name = |g: usize| format!("y{}{}", g / n + 1, g % n + 1);
    let mono_name = |e: &Vec<u32>| {
        let mut parts = Vec::new();
        for (g, &k) in e.iter().enumerate() {
            for _ in 0..k {
                parts.push(gen_name(g));
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    };
    let coeffs: Vec<&QScalar> = p.values().collect();
    if let Some(lead) = p.keys().max() {
        let common = p[lead].clone();
        let all_same = coeffs
            .iter()
            .all(|c| **c == common || **c == -(&common));
        if all_same && p.len() > 1 && !common.is_zero() {
            let inner: Vec<String> = p
                .iter()
                .rev()
                .map(|(e, c)| {
                    let sign = if *c == common { "+" } else { "-" };
                    format!("{} {}", sign, mono_name(e))
                })
                .collect();
            let joined = inner.join(" ").trim_start_matches("+ ").to_string();
            return format!("({})*({})", common, joined);
        }
    }
    p.iter()
        .rev()
        .map(|(e, c)| format!("({})*{}", c, mono_name(e)))
        .collect::<Vec<_>>()
        .join(" + ")
}

// ---------------------------------------------------------------------------
// Simplicity certificate
// ---------------------------------------------------------------------------

/// One rewriting step of the simplicity algorithm, with the element it
/// produced.
#[derive(Debug, Clone, PartialEq)]
pub enum CertStep {
    /// Apply `θ^(n)` for n = maximal t-degree.
    ApplyThetaN { n: u32, result: TorusElement },
    /// Multiply by the recorded monomial.
    MultiplyMonomial { factor: TorusElement, result: TorusElement },
    /// Replace h by `(q^s h − σ(h)) / (q^s − 1)`.
    SigmaCombine { s: i64, result: TorusElement },
}

/// Replayable witness that the two-sided qsi ideal generated by the
/// input contains 1.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplicityCertificate {
    pub input: TorusElement,
    pub steps: Vec<CertStep>,
}

/// Runs the constructive simplicity argument on a nonzero element of
/// the Picard-Vessiot ring: take the top t-coefficient with `θ^(n)`,
/// scale away the lowest Q-term, then eliminate the top Q-term with
/// σ-combinations until only 1 remains.
pub fn simplicity_certificate(f: &TorusElement) -> Result<SimplicityCertificate, VerifyError> {
    if f.is_zero() {
        return Err(VerifyError::ZeroInput);
    }
    if !in_pv_ring(f) {
        return Err(VerifyError::NotInPvRing);
    }
    let mut steps = Vec::new();
    let mut h = f.clone();

    let n = h.terms().map(|(k, _)| k.t_exp).max().unwrap();
    if n > 0 {
        h = theta(n as u32, &h);
        steps.push(CertStep::ApplyThetaN { n: n as u32, result: h.clone() });
    }
    // h is now a nonzero element of k[Q, Q^{-1}]
    if !h.is_zero() && h != TorusElement::one() {
        let low = h.terms().map(|(k, _)| k.q_exp).min().unwrap();
        let low_coeff = h.coeff(&TorusKey { t_exp: 0, q_exp: low });
        let factor = monomial(0, -low, low_coeff.inv().expect("lowest coefficient nonzero"));
        if factor != TorusElement::one() {
            h = h.mul(&factor);
            steps.push(CertStep::MultiplyMonomial { factor, result: h.clone() });
        }
    }
    loop {
        let s = h.terms().map(|(k, _)| k.q_exp).max().unwrap();
        if s == 0 {
            break;
        }
        h = sigma_combine(&h, s);
        steps.push(CertStep::SigmaCombine { s, result: h.clone() });
    }
    debug_assert_eq!(h, TorusElement::one());
    Ok(SimplicityCertificate { input: f.clone(), steps })
}

fn sigma_combine(h: &TorusElement, s: i64) -> TorusElement {
    let qs = QScalar::q_pow(s);
    let denom = (&qs - &QScalar::one()).inv().expect("q^s != 1 for formal q, s != 0");
    h.scale(&qs).sub(&sigma(h)).scale(&denom)
}

/// Re-runs a certificate from its input, checking every recorded
/// intermediate; returns the final element (1 for valid certificates).
pub fn replay_certificate(cert: &SimplicityCertificate) -> Result<TorusElement, VerifyError> {
    let mut h = cert.input.clone();
    for step in &cert.steps {
        let (next, recorded) = match step {
            CertStep::ApplyThetaN { n, result } => (theta(*n, &h), result),
            CertStep::MultiplyMonomial { factor, result } => (h.mul(factor), result),
            CertStep::SigmaCombine { s, result } => (sigma_combine(&h, *s), result),
        };
        if &next != recorded {
            return Err(VerifyError::ReplayMismatch);
        }
        h = next;
    }
    Ok(h)
}

// ---------------------------------------------------------------------------
// Constants of modules over the torus
// ---------------------------------------------------------------------------

/// Element of `R ⊗ M` whose coefficients are fixed by σ and killed by
/// θ^(1) under the combined action.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantVector {
    pub coeffs: Vec<TorusElement>,
}

/// Combined σ action on `R ⊗ M`: apply σ entrywise, then the module
/// matrix `S` on coordinates.
pub fn module_sigma(m: &QsiModule, r: &[TorusElement]) -> Vec<TorusElement> {
    let s = m.sigma_matrix();
    (0..m.dim())
        .map(|k| {
            let mut acc = TorusElement::zero();
            for k2 in 0..m.dim() {
                acc = acc.add(&sigma(&r[k2]).scale(&s[(k, k2)]));
            }
            acc
        })
        .collect()
}

/// Combined θ^(1) action on `R ⊗ M`: `θ⊗id + σ⊗T` on coordinates.
pub fn module_theta(m: &QsiModule, r: &[TorusElement]) -> Vec<TorusElement> {
    let t = m.theta_matrix();
    (0..m.dim())
        .map(|k| {
            let mut acc = theta1(&r[k]);
            for k2 in 0..m.dim() {
                acc = acc.add(&sigma(&r[k2]).scale(&t[(k, k2)]));
            }
            acc
        })
        .collect()
}

impl ConstantVector {
    pub fn is_constant(&self, m: &QsiModule) -> bool {
        module_sigma(m, &self.coeffs) == self.coeffs
            && module_theta(m, &self.coeffs).iter().all(|x| x.is_zero())
    }
}

/// Exact basis of the solutions of the requested operator equations on
/// the window, by blockwise σ-eigenspace reduction followed by a dense
/// nullspace computation for the θ constraint.
fn solve_constants(
    m: &QsiModule,
    window: &ExponentWindow,
    require_sigma: bool,
    require_theta: bool,
) -> Vec<ConstantVector> {
    let dim = m.dim();
    // Stage 1: σ(r) = r decomposes per monomial t^i Q^j, where σ scales
    // by q^{i+j}; solve (q^{i+j} S − I) x = 0 blockwise.
    let mut generators: Vec<(TorusKey, Vec<QScalar>)> = Vec::new();
    for key in window.keys() {
        if require_sigma {
            let w = key.t_exp + key.q_exp;
            let block = m
                .sigma_matrix()
                .scale(&QScalar::q_pow(w))
                .sub(&Matrix::identity(dim));
            for x in block.null_space() {
                generators.push((key, x));
            }
        } else {
            for k in 0..dim {
                let mut x = vec![QScalar::zero(); dim];
                x[k] = QScalar::one();
                generators.push((key, x));
            }
        }
    }
    if generators.is_empty() {
        return Vec::new();
    }
    let gen_element = |(key, x): &(TorusKey, Vec<QScalar>)| -> Vec<TorusElement> {
        x.iter()
            .map(|c| monomial(key.t_exp, key.q_exp, c.clone()))
            .collect()
    };
    let combos: Vec<Vec<QScalar>> = if require_theta {
        // Stage 2: θ defects of the generators, expanded over the joint
        // monomial support per component.
        let defects: Vec<Vec<TorusElement>> = generators
            .iter()
            .map(|g| module_theta(m, &gen_element(g)))
            .collect();
        let mut rows: BTreeMap<(usize, TorusKey), usize> = BTreeMap::new();
        for d in &defects {
            for (k, comp) in d.iter().enumerate() {
                for (key, _) in comp.terms() {
                    let next = rows.len();
                    rows.entry((k, *key)).or_insert(next);
                }
            }
        }
        let row_keys: Vec<(usize, TorusKey)> = rows.keys().cloned().collect();
        let a = Matrix::from_fn(row_keys.len(), generators.len(), |i, j| {
            let (k, key) = &row_keys[i];
            defects[j][*k].coeff(key)
        });
        a.null_space()
    } else {
        (0..generators.len())
            .map(|i| {
                let mut v = vec![QScalar::zero(); generators.len()];
                v[i] = QScalar::one();
                v
            })
            .collect()
    };
    let results: Vec<ConstantVector> = combos
        .into_iter()
        .map(|combo| {
            let mut coeffs = vec![TorusElement::zero(); dim];
            for (c, g) in combo.iter().zip(&generators) {
                if c.is_zero() {
                    continue;
                }
                for (k, part) in gen_element(g).iter().enumerate() {
                    coeffs[k] = coeffs[k].add(&part.scale(c));
                }
            }
            // make the first nonzero coefficient 1 for a canonical basis
            let lead = coeffs
                .iter()
                .flat_map(|comp| comp.terms().map(|(_, c)| c.clone()))
                .find(|c| !c.is_zero());
            if let Some(lead) = lead {
                let inv = lead.inv().expect("nonzero leading coefficient");
                for comp in &mut coeffs {
                    *comp = comp.scale(&inv);
                }
            }
            ConstantVector { coeffs }
        })
        .collect();
    // Re-check exactly; the solver output is not trusted.
    for r in &results {
        if require_sigma {
            assert_eq!(module_sigma(m, &r.coeffs), r.coeffs, "sigma re-check failed");
        }
        if require_theta {
            assert!(
                module_theta(m, &r.coeffs).iter().all(|x| x.is_zero()),
                "theta re-check failed"
            );
        }
    }
    results
}

/// Basis of the qsi constants of `R` itself on the window.
pub fn ring_constants(window: &ExponentWindow) -> Vec<TorusElement> {
    solve_constants(&QsiModule::unit(), window, true, true)
        .into_iter()
        .map(|cv| cv.coeffs.into_iter().next().unwrap())
        .collect()
}

/// Basis of the θ*-constants of `R` on the window (no σ condition).
pub fn theta_constants(window: &ExponentWindow) -> Vec<TorusElement> {
    solve_constants(&QsiModule::unit(), window, false, true)
        .into_iter()
        .map(|cv| cv.coeffs.into_iter().next().unwrap())
        .collect()
}

// ---------------------------------------------------------------------------
// Fundamental matrix checks
// ---------------------------------------------------------------------------

pub type TorusMatrix = Vec<Vec<TorusElement>>;

#[derive(Debug, Clone)]
pub struct FundamentalReport {
    pub sigma_ok: bool,
    pub theta_ok: bool,
    /// (which equation, row, column) of the first violated entry.
    pub first_violation: Option<(String, usize, usize)>,
    pub inverse_ok: Option<bool>,
}

impl FundamentalReport {
    pub fn passed(&self) -> bool {
        self.sigma_ok && self.theta_ok && self.inverse_ok.unwrap_or(true)
    }
}

fn scalar_torus_mul(a: &QMatrix, y: &TorusMatrix) -> TorusMatrix {
    (0..a.rows)
        .map(|i| {
            (0..y[0].len())
                .map(|j| {
                    let mut acc = TorusElement::zero();
                    for k in 0..a.cols {
                        acc = acc.add(&y[k][j].scale(&a[(i, k)]));
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn torus_mat_mul(a: &TorusMatrix, b: &TorusMatrix) -> TorusMatrix {
    (0..a.len())
        .map(|i| {
            (0..b[0].len())
                .map(|j| {
                    let mut acc = TorusElement::zero();
                    for k in 0..b.len() {
                        acc = acc.add(&a[i][k].mul(&b[k][j]));
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn torus_identity(n: usize) -> TorusMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        TorusElement::one()
                    } else {
                        TorusElement::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// Verifies `σY = A_sigma·Y` and `θ^(1)Y = A_theta·Y` entrywise, and,
/// when an explicit inverse is supplied, that it multiplies to the
/// identity on both sides.
pub fn check_fundamental(
    y: &TorusMatrix,
    a_sigma: &QMatrix,
    a_theta: &QMatrix,
    inverse: Option<&TorusMatrix>,
) -> Result<FundamentalReport, VerifyError> {
    let n = y.len();
    if n == 0
        || y.iter().any(|row| row.len() != n)
        || !a_sigma.is_square()
        || a_sigma.rows != n
        || !a_theta.is_square()
        || a_theta.rows != n
    {
        return Err(VerifyError::ShapeMismatch);
    }
    let mut first_violation = None;
    let mut sigma_ok = true;
    let rhs_sigma = scalar_torus_mul(a_sigma, y);
    'outer_s: for i in 0..n {
        for j in 0..n {
            if sigma(&y[i][j]) != rhs_sigma[i][j] {
                sigma_ok = false;
                first_violation = Some(("sigma".to_string(), i, j));
                break 'outer_s;
            }
        }
    }
    let mut theta_ok = true;
    let rhs_theta = scalar_torus_mul(a_theta, y);
    'outer_t: for i in 0..n {
        for j in 0..n {
            if theta1(&y[i][j]) != rhs_theta[i][j] {
                theta_ok = false;
                if first_violation.is_none() {
                    first_violation = Some(("theta".to_string(), i, j));
                }
                break 'outer_t;
            }
        }
    }
    let inverse_ok = inverse.map(|inv| {
        torus_mat_mul(y, inv) == torus_identity(n) && torus_mat_mul(inv, y) == torus_identity(n)
    });
    Ok(FundamentalReport { sigma_ok, theta_ok, first_violation, inverse_ok })
}

/// The fundamental matrix `Y = [[Q, t], [0, 1]]` of the defining
/// system, with its explicit inverse `[[Q^{-1}, -Q^{-1}t], [0, 1]]`.
pub fn defining_fundamental_matrix() -> (TorusMatrix, TorusMatrix) {
    let y = vec![
        vec![torus::q_gen(), torus::t_gen()],
        vec![TorusElement::zero(), TorusElement::one()],
    ];
    // -Q^{-1} t = -q^{-1} t Q^{-1} in normal form
    let y_inv = vec![
        vec![
            monomial(0, -1, QScalar::one()),
            monomial(1, -1, -QScalar::q_pow(-1)),
        ],
        vec![TorusElement::zero(), TorusElement::one()],
    ];
    (y, y_inv)
}

/// The coefficient matrices of the defining linear system.
pub fn defining_system() -> (QMatrix, QMatrix) {
    let a_sigma = Matrix::from_rows(vec![
        vec![QScalar::q(), QScalar::zero()],
        vec![QScalar::zero(), QScalar::one()],
    ]);
    let a_theta = Matrix::from_rows(vec![
        vec![QScalar::zero(), QScalar::one()],
        vec![QScalar::zero(), QScalar::zero()],
    ]);
    (a_sigma, a_theta)
}

// ---------------------------------------------------------------------------
// Trivialization and the Tannakian suite
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct TrivializationReport {
    pub constants: Vec<ConstantVector>,
    /// Set when the constant count equals the module dimension: whether
    /// the transition matrix has a two-sided inverse over the torus.
    pub free: Option<bool>,
    /// Inverse transition matrix, when found: expresses the standard
    /// basis over the constants.
    pub inverse_transition: Option<TorusMatrix>,
}

/// `a` when the scalar is exactly `q^a`.
fn q_power_exponent(c: &QScalar) -> Option<i64> {
    let single = |p: &QPoly| -> Option<i64> {
        let mut it = p.terms();
        match (it.next(), it.next()) {
            (Some((e, c)), None) if c.is_one() => Some(*e as i64),
            _ => None,
        }
    };
    Some(single(c.numerator())? - single(c.denominator())?)
}

/// The exponents `a_i` when `S = diag(q^{a_1}, ..., q^{a_n})`.
fn diag_q_exponents(m: &QsiModule) -> Option<Vec<i64>> {
    let s = m.sigma_matrix();
    let mut out = Vec::with_capacity(m.dim());
    for i in 0..m.dim() {
        for j in 0..m.dim() {
            if i != j && !s[(i, j)].is_zero() {
                return None;
            }
        }
        out.push(q_power_exponent(&s[(i, i)])?);
    }
    Some(out)
}

/// Basis of the constants of `R⊗M` supported in the window, plus the
/// freeness check on the transition matrix.
pub fn trivialize_module(m: &QsiModule, window: &ExponentWindow) -> TrivializationReport {
    let constants = solve_constants(m, window, true, true);
    if constants.len() != m.dim() {
        return TrivializationReport { constants, free: None, inverse_transition: None };
    }
    let dim = m.dim();
    // Transition matrix: column j holds the coefficients of constant j.
    let c: TorusMatrix = (0..dim)
        .map(|k| (0..dim).map(|j| constants[j].coeffs[k].clone()).collect())
        .collect();
    // Solve C·D = I for D over a mirrored window, then confirm D·C = I.
    let bt = window.t_min.abs().max(window.t_max.abs());
    let bq = window.q_min.abs().max(window.q_max.abs());
    let solve_window = ExponentWindow::new(-bt, bt, -bq, bq);
    // When S is diagonal in q-powers, σ-semilinearity pins the entries
    // of column j to the stripe t+Q-degree = a_j, which keeps the
    // solve small.
    let col_keys: Vec<Vec<TorusKey>> = match diag_q_exponents(m) {
        Some(weights) => weights
            .iter()
            .map(|a| {
                solve_window
                    .keys()
                    .filter(|k| k.t_exp + k.q_exp == *a)
                    .collect()
            })
            .collect(),
        None => vec![solve_window.keys().collect(); dim],
    };
    let d = solve_right_inverse(&c, &col_keys);
    match d {
        Some(d) if torus_mat_mul(&d, &c) == torus_identity(dim) => TrivializationReport {
            constants,
            free: Some(true),
            inverse_transition: Some(d),
        },
        _ => TrivializationReport { constants, free: Some(false), inverse_transition: None },
    }
}

/// Finds `D` with `C·D = I`, entries of column `j` supported on
/// `col_keys[j]`, by a linear solve per column.
fn solve_right_inverse(c: &TorusMatrix, col_keys: &[Vec<TorusKey>]) -> Option<TorusMatrix> {
    let n = c.len();
    let mut d = vec![vec![TorusElement::zero(); n]; n];
    for col in 0..n {
        let keys = &col_keys[col];
        if keys.is_empty() {
            return None;
        }
        // unknowns: coefficient of keys[u] in D[k][col], flattened k*keys+u
        let products: Vec<Vec<TorusElement>> = (0..n)
            .map(|i| {
                let mut row_products = Vec::new();
                for k in 0..n {
                    for key in keys {
                        row_products
                            .push(c[i][k].mul(&monomial(key.t_exp, key.q_exp, QScalar::one())));
                    }
                }
                row_products
            })
            .collect();
        let mut support: BTreeMap<(usize, TorusKey), usize> = BTreeMap::new();
        for (i, row) in products.iter().enumerate() {
            for p in row {
                for (key, _) in p.terms() {
                    let next = support.len();
                    support.entry((i, *key)).or_insert(next);
                }
            }
        }
        // the identity target must be representable
        let next = support.len();
        support.entry((col, TorusKey { t_exp: 0, q_exp: 0 })).or_insert(next);
        let rows: Vec<(usize, TorusKey)> = support.keys().cloned().collect();
        let a = Matrix::from_fn(rows.len(), n * keys.len(), |r, u| {
            let (i, key) = &rows[r];
            products[*i][u].coeff(key)
        });
        let b: Vec<QScalar> = rows
            .iter()
            .map(|(i, key)| {
                if *i == col && key.t_exp == 0 && key.q_exp == 0 {
                    QScalar::one()
                } else {
                    QScalar::zero()
                }
            })
            .collect();
        let x = a.solve(&b)?;
        for k in 0..n {
            let mut entry = TorusElement::zero();
            for (u, key) in keys.iter().enumerate() {
                entry.add_term(*key, x[k * keys.len() + u].clone());
            }
            d[k][col] = entry;
        }
    }
    Some(d)
}

#[derive(Debug, Clone)]
pub struct TannakaEntry {
    pub name: String,
    pub dim: usize,
    pub constants_found: usize,
    /// Coaction matrix on the trivializing frame, when computable.
    pub coaction_matrix: Option<Vec<Vec<HopfElement>>>,
    pub pass: bool,
}

/// Runs `trivialize_module` on every object built from the defining
/// module by tensor and dual, up to the dimension bound, asserting the
/// constant space has full dimension and recording the induced
/// coaction matrix on the constants.
pub fn tannaka_suite(size_bound: usize, window: &ExponentWindow) -> Vec<TannakaEntry> {
    let m = crate::module::defining_module();
    let md = crate::module::dual(&m);
    let mut objects: Vec<(String, QsiModule)> = vec![("1".to_string(), QsiModule::unit())];
    let mut frontier: Vec<(String, QsiModule)> = vec![("1".to_string(), QsiModule::unit())];
    loop {
        let mut next = Vec::new();
        for (name, obj) in &frontier {
            for (gname, g) in [("M", &m), ("M*", &md)] {
                let prod = if obj.dim() == 1 && name == "1" {
                    (*g).clone()
                } else {
                    crate::module::tensor(obj, g)
                };
                if prod.dim() <= size_bound {
                    let new_name = if name == "1" {
                        gname.to_string()
                    } else {
                        format!("{name}(x){gname}")
                    };
                    next.push((new_name, prod));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        objects.extend(next.iter().cloned());
        frontier = next;
    }

    objects
        .into_iter()
        .map(|(name, obj)| {
            let report = trivialize_module(&obj, window);
            let found = report.constants.len();
            let coaction_matrix = if found == obj.dim() {
                coaction_on_constants(&report.constants)
            } else {
                None
            };
            let pass = found == obj.dim() && report.free == Some(true);
            TannakaEntry { name, dim: obj.dim(), constants_found: found, coaction_matrix, pass }
        })
        .collect()
}

/// Reads off the Hopf-algebra coaction matrix on a trivializing frame:
/// solves `ρ(c_i) = Σ_j c_j ⊗ h_{ji}` for the `h_{ji}`.
///
/// Since `c_j ⊗ (u^a v^b)` is homogeneous in the right tensor factor,
/// the system splits per Hopf monomial into scalar solves against the
/// fixed basis matrix of the constants.
fn coaction_on_constants(constants: &[ConstantVector]) -> Option<Vec<Vec<HopfElement>>> {
    let d = constants.len();
    if constants
        .iter()
        .any(|cv| cv.coeffs.iter().any(|c| !in_pv_ring(c)))
    {
        return None;
    }
    let dim = constants[0].coeffs.len();
    let mut support: BTreeMap<(usize, TorusKey), usize> = BTreeMap::new();
    for cv in constants {
        for (comp, el) in cv.coeffs.iter().enumerate() {
            for (key, _) in el.terms() {
                let next = support.len();
                support.entry((comp, *key)).or_insert(next);
            }
        }
    }
    let rows: Vec<(usize, TorusKey)> = support.keys().cloned().collect();
    let basis = Matrix::from_fn(rows.len(), d, |r, j| {
        let (comp, key) = &rows[r];
        constants[j].coeffs[*comp].coeff(key)
    });
    let mut matrix = vec![vec![HopfElement::zero(); d]; d];
    for i in 0..d {
        // collect ρ(c_i) componentwise, grouped by the Hopf monomial
        let mut by_key: BTreeMap<HopfKey, Vec<TorusElement>> = BTreeMap::new();
        for (comp, el) in constants[i].coeffs.iter().enumerate() {
            let rho: TensorRH = coaction(el).expect("checked PV membership");
            for (Pair(tk, hk), coeff) in rho.terms() {
                by_key.entry(*hk).or_insert_with(|| vec![TorusElement::zero(); dim])[comp]
                    .add_term(*tk, coeff.clone());
            }
        }
        for (hk, comps) in by_key {
            // every torus monomial must appear in the constants' support
            for (comp, el) in comps.iter().enumerate() {
                for (key, _) in el.terms() {
                    if !support.contains_key(&(comp, *key)) {
                        return None;
                    }
                }
            }
            let b: Vec<QScalar> = rows
                .iter()
                .map(|(comp, key)| comps[*comp].coeff(key))
                .collect();
            let x = basis.solve(&b)?;
            for j in 0..d {
                matrix[j][i].add_term(hk, x[j].clone());
            }
        }
    }
    // Exact re-check of the reconstruction.
    for i in 0..d {
        for comp in 0..dim {
            let mut lhs: TensorRH = Element::zero();
            for j in 0..d {
                lhs = lhs.add(&tensor_pair(&constants[j].coeffs[comp], &matrix[j][i]));
            }
            let rho = coaction(&constants[i].coeffs[comp]).expect("checked PV membership");
            if lhs != rho {
                return None;
            }
        }
    }
    Some(matrix)
}

// ---------------------------------------------------------------------------
// Classical differential warm-up
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct WarmupReport {
    pub system_ok: bool,
    pub det: BigRational,
    pub det_constant: bool,
    pub deriv_t2_ok: bool,
}

impl WarmupReport {
    pub fn passed(&self) -> bool {
        self.system_ok
            && self.det == -BigRational::one()
            && self.det_constant
            && self.deriv_t2_ok
    }
}

/// Dense polynomial in `t` over the rationals.
type RPoly = BTreeMap<u32, BigRational>;

fn rp(terms: &[(u32, i64)]) -> RPoly {
    terms
        .iter()
        .filter(|(_, c)| *c != 0)
        .map(|(e, c)| (*e, BigRational::from(BigInt::from(*c))))
        .collect()
}

fn rp_deriv(p: &RPoly) -> RPoly {
    p.iter()
        .filter(|(e, _)| **e > 0)
        .map(|(e, c)| (e - 1, c * BigRational::from(BigInt::from(*e))))
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

fn rp_mul(a: &RPoly, b: &RPoly) -> RPoly {
    let mut out = RPoly::new();
    for (e1, c1) in a {
        for (e2, c2) in b {
            let entry = out.entry(e1 + e2).or_insert_with(BigRational::zero);
            *entry += c1 * c2;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn rp_sub(a: &RPoly, b: &RPoly) -> RPoly {
    let mut out = a.clone();
    for (e, c) in b {
        let entry = out.entry(*e).or_insert_with(BigRational::zero);
        *entry -= c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Replays the commutative warm-up: the matrix `[[t, 1], [1, 0]]`
/// solves the second-order system with nonzero constant determinant.
pub fn classical_warmup() -> WarmupReport {
    let y = [[rp(&[(1, 1)]), rp(&[(0, 1)])], [rp(&[(0, 1)]), rp(&[])]];
    let a = [[rp(&[]), rp(&[(0, 1)])], [rp(&[]), rp(&[])]];
    // ∂Y = A·Y entrywise
    let mut system_ok = true;
    for i in 0..2 {
        for j in 0..2 {
            let mut rhs = RPoly::new();
            for k in 0..2 {
                rhs = rp_sub(&rhs, &rp_mul(&a[i][k], &y[k][j]));
            }
            let rhs: RPoly = rhs.iter().map(|(e, c)| (*e, -c)).collect();
            if rp_deriv(&y[i][j]) != rhs {
                system_ok = false;
            }
        }
    }
    let det_poly = rp_sub(&rp_mul(&y[0][0], &y[1][1]), &rp_mul(&y[0][1], &y[1][0]));
    let det = det_poly
        .get(&0)
        .cloned()
        .unwrap_or_else(BigRational::zero);
    let det_constant = det_poly.keys().all(|e| *e == 0) && rp_deriv(&det_poly).is_empty();
    // ∂(t^2) = 2t
    let deriv_t2_ok = rp_deriv(&rp(&[(2, 1)])) == rp(&[(1, 2)]);
    WarmupReport { system_ok, det, det_constant, deriv_t2_ok }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::defining_module;

    #[test]
    fn lemma1_defining_system() {
        let (a_sigma, a_theta) = defining_system();
        let relations = lemma1_obstruction(a_sigma, a_theta).unwrap();
        assert_eq!(relations.len(), 1);
        // (q-1)(y11 y22 - y12 y21): exponents over (y11, y12, y21, y22)
        let qm1 = QScalar::q() - QScalar::one();
        let mut expected = SystemPoly::new();
        expected.insert(vec![1, 0, 0, 1], qm1.clone());
        expected.insert(vec![0, 1, 1, 0], -qm1);
        assert_eq!(relations[0], expected);
    }

    #[test]
    fn lemma1_no_obstruction_cases() {
        // diag(q, q) with zero theta: all differences vanish
        let a_sigma = Matrix::from_rows(vec![
            vec![QScalar::q(), QScalar::zero()],
            vec![QScalar::zero(), QScalar::q()],
        ]);
        let a_theta = Matrix::zero(2, 2);
        assert!(lemma1_obstruction(a_sigma, a_theta).unwrap().is_empty());

        // identity sigma: twisted Leibniz is symmetric
        let (_, a_theta) = defining_system();
        assert!(lemma1_obstruction(Matrix::identity(2), a_theta).unwrap().is_empty());
    }

    #[test]
    fn lemma1_render() {
        let (a_sigma, a_theta) = defining_system();
        let relations = lemma1_obstruction(a_sigma, a_theta).unwrap();
        let rendered = render_relation(4, &relations[0]);
        assert_eq!(rendered, "(q - 1)*(y11*y22 - y12*y21)");
    }

    #[test]
    fn simplicity_examples() {
        // f = t Q: theta kills t, then scale away Q
        let f = torus::t_gen().mul(&torus::q_gen());
        let cert = simplicity_certificate(&f).unwrap();
        assert_eq!(cert.steps.len(), 2);
        assert!(matches!(cert.steps[0], CertStep::ApplyThetaN { n: 1, .. }));
        assert!(matches!(cert.steps[1], CertStep::MultiplyMonomial { .. }));
        assert_eq!(replay_certificate(&cert).unwrap(), TorusElement::one());

        // f = 1: empty certificate
        let cert = simplicity_certificate(&TorusElement::one()).unwrap();
        assert!(cert.steps.is_empty());

        // f = 1 + Q: single sigma combination
        let f = TorusElement::one().add(&torus::q_gen());
        let cert = simplicity_certificate(&f).unwrap();
        assert_eq!(cert.steps.len(), 1);
        assert!(matches!(cert.steps[0], CertStep::SigmaCombine { s: 1, .. }));
        assert_eq!(replay_certificate(&cert).unwrap(), TorusElement::one());

        assert_eq!(
            simplicity_certificate(&TorusElement::zero()),
            Err(VerifyError::ZeroInput)
        );
        assert_eq!(
            simplicity_certificate(&monomial(-1, 0, QScalar::one())),
            Err(VerifyError::NotInPvRing)
        );
    }

    #[test]
    fn replay_detects_tampering() {
        let f = TorusElement::one().add(&torus::q_gen());
        let mut cert = simplicity_certificate(&f).unwrap();
        if let CertStep::SigmaCombine { result, .. } = &mut cert.steps[0] {
            *result = torus::t_gen();
        }
        assert_eq!(replay_certificate(&cert), Err(VerifyError::ReplayMismatch));
    }

    #[test]
    fn ring_constants_examples() {
        let w = ExponentWindow::new(-5, 5, -5, 5);
        let basis = ring_constants(&w);
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0], TorusElement::one());

        let off_origin = ExponentWindow::new(1, 3, -5, 5);
        assert!(ring_constants(&off_origin).is_empty());

        let point = ExponentWindow::new(0, 0, 0, 0);
        assert_eq!(ring_constants(&point).len(), 1);
    }

    #[test]
    fn theta_constants_examples() {
        let w = ExponentWindow::new(0, 2, -1, 1);
        let basis = theta_constants(&w);
        assert_eq!(basis.len(), 3);
        for j in -1..=1 {
            assert!(basis.contains(&monomial(0, j, QScalar::one())), "Q^{j}");
        }
        let no_t0 = ExponentWindow::new(1, 2, -1, 1);
        assert!(theta_constants(&no_t0).is_empty());
    }

    #[test]
    fn fundamental_matrix_checks() {
        let (y, y_inv) = defining_fundamental_matrix();
        let (a_sigma, a_theta) = defining_system();
        let report = check_fundamental(&y, &a_sigma, &a_theta, Some(&y_inv)).unwrap();
        assert!(report.passed(), "{report:?}");

        // identity solves the trivial system
        let id = torus_identity(2);
        let report =
            check_fundamental(&id, &Matrix::identity(2), &Matrix::zero(2, 2), None).unwrap();
        assert!(report.passed());

        // swapped top row fails, with the violation located
        let bad = vec![
            vec![torus::t_gen(), torus::q_gen()],
            vec![TorusElement::zero(), TorusElement::one()],
        ];
        let report = check_fundamental(&bad, &a_sigma, &a_theta, None).unwrap();
        assert!(!report.passed());
        assert!(report.first_violation.is_some());
    }

    #[test]
    fn trivialize_defining_module() {
        let report = trivialize_module(&defining_module(), &ExponentWindow::new(0, 1, -1, 0));
        assert_eq!(report.constants.len(), 2);
        assert_eq!(report.free, Some(true));
        // c1 = Q^{-1}⊗m1 − q^{-1} t Q^{-1}⊗m2, c2 = 1⊗m2
        let c1 = ConstantVector {
            coeffs: vec![
                monomial(0, -1, QScalar::one()),
                monomial(1, -1, -QScalar::q_pow(-1)),
            ],
        };
        let c2 = ConstantVector {
            coeffs: vec![TorusElement::zero(), TorusElement::one()],
        };
        assert!(report.constants.contains(&c1), "{:?}", report.constants);
        assert!(report.constants.contains(&c2));
        for cv in &report.constants {
            assert!(cv.is_constant(&defining_module()));
        }
    }

    #[test]
    fn trivialize_unit_module() {
        let report = trivialize_module(&QsiModule::unit(), &ExponentWindow::new(-1, 1, -1, 1));
        assert_eq!(report.constants.len(), 1);
        assert_eq!(report.constants[0].coeffs, vec![TorusElement::one()]);
        assert_eq!(report.free, Some(true));
    }

    #[test]
    fn trivialize_tensor_square() {
        let m = defining_module();
        let mm = crate::module::tensor(&m, &m);
        let report = trivialize_module(&mm, &ExponentWindow::new(-2, 2, -2, 2));
        assert_eq!(report.constants.len(), 4);
    }

    #[test]
    fn transition_matrix_reconstructs_basis() {
        // m1 = Q·c1 + t·c2 for the defining module
        let report = trivialize_module(&defining_module(), &ExponentWindow::new(0, 1, -1, 0));
        let d = report.inverse_transition.expect("free module");
        // D expresses the standard basis over the constants: column 0
        // holds the coefficients of e1 = m1.
        let c: TorusMatrix = (0..2)
            .map(|k| (0..2).map(|j| report.constants[j].coeffs[k].clone()).collect())
            .collect();
        assert_eq!(torus_mat_mul(&c, &d), torus_identity(2));
        assert_eq!(torus_mat_mul(&d, &c), torus_identity(2));
    }

    #[test]
    fn tannaka_small() {
        let entries = tannaka_suite(4, &ExponentWindow::new(-2, 2, -2, 2));
        assert!(entries.iter().any(|e| e.name == "1"));
        assert!(entries.iter().any(|e| e.name == "M"));
        assert!(entries.iter().any(|e| e.name == "M*"));
        for e in &entries {
            assert!(e.pass, "object {} failed: {e:?}", e.name);
            assert_eq!(e.constants_found, e.dim);
            let mat = e.coaction_matrix.as_ref().expect("coaction matrix");
            assert_eq!(mat.len(), e.dim);
        }
    }

    #[test]
    fn warmup_passes() {
        let report = classical_warmup();
        assert!(report.passed());
        assert_eq!(report.det, -BigRational::one());
    }
}

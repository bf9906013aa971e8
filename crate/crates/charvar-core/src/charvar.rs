//! Monodromy tuples on the k-punctured sphere and their classification.
//!
//! A point of the representation variety is a tuple (B₁,…,B_k) of
//! determinant-1 matrices with B₁⋯B_k = I, each B_i lying in the conjugacy
//! class with eigenvalues c_i, c_i⁻¹. This module provides the genericity
//! conditions on the eigenvalue vector (Kostov-generic and very generic),
//! tuple validation, irreducibility, the pants decomposition of the sphere
//! along the circles indexed i = 2..k−2, pants stability, the trace
//! classification of circle monodromies, and the stratum datum
//! α = (σ₂,…,σ_{k−1}; G₂,…,G_{k−2}) built from all of these. The open
//! stratum (every pants stable, every interior monodromy regular) is the
//! domain of the Fenchel–Nielsen coordinates.

use std::fmt;

use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::exact_linear::{proj_normalize, ExactError, Mat2, ProjMat2, Scalar};

/// Genericity checks enumerate all sign vectors; 2^k above this is no longer
/// desk scale.
pub const MAX_GENERICITY_CLASSES: usize = 24;

/// Errors from tuple classification and genericity checks.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharVarError {
    #[error("class {index} is zero")]
    ZeroClass { index: usize },
    #[error("class {index} = {value}: eigenvalues 0, 1, -1 are excluded")]
    UnitClass { index: usize, value: Scalar },
    #[error("genericity checks are limited to {MAX_GENERICITY_CLASSES} classes, got {len}")]
    TooManyClasses { len: usize },
    #[error("need at least 4 punctures, got k = {k}")]
    KTooSmall { k: usize },
    #[error("class count {len} does not match k = {k}")]
    ClassCountMismatch { k: usize, len: usize },
    #[error("index {index} out of range {lo}..={hi}")]
    IndexOutOfRange { index: usize, lo: usize, hi: usize },
    #[error("determinant must be 1, got {det}")]
    DeterminantNotOne { det: Scalar },
    #[error("stability precondition violated: {0}")]
    StabilityPrecondition(String),
    #[error(transparent)]
    InvalidRep(#[from] RepError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// The eigenvalue data of the problem: k ≥ 4 punctures and one conjugacy
/// class per puncture, named by an eigenvalue c_i ∉ {0, 1, −1} (the class of
/// determinant-1 matrices with eigenvalues c_i, c_i⁻¹).
///
/// Serializes as `{"k": 4, "classes": ["2", "3", "5", "7"]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ProblemWire")]
pub struct Problem {
    k: usize,
    classes: Vec<Scalar>,
}

#[derive(Deserialize)]
struct ProblemWire {
    k: usize,
    classes: Vec<Scalar>,
}

impl TryFrom<ProblemWire> for Problem {
    type Error = CharVarError;
    fn try_from(wire: ProblemWire) -> Result<Self, Self::Error> {
        if wire.classes.len() != wire.k {
            return Err(CharVarError::ClassCountMismatch {
                k: wire.k,
                len: wire.classes.len(),
            });
        }
        Problem::new(wire.classes)
    }
}

impl Problem {
    /// Builds a problem from its class eigenvalues (k = length).
    pub fn new(classes: Vec<Scalar>) -> Result<Self, CharVarError> {
        let k = classes.len();
        if k < 4 {
            return Err(CharVarError::KTooSmall { k });
        }
        for (idx, c) in classes.iter().enumerate() {
            if c.is_zero() || c.is_one() || (-c).is_one() {
                return Err(CharVarError::UnitClass {
                    index: idx + 1,
                    value: c.clone(),
                });
            }
        }
        Ok(Problem { k, classes })
    }

    /// Convenience constructor from machine integers.
    pub fn from_ints(classes: &[i64]) -> Result<Self, CharVarError> {
        Problem::new(classes.iter().map(|&n| Scalar::from_int(n)).collect())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn classes(&self) -> &[Scalar] {
        &self.classes
    }

    /// The class eigenvalue c_i, 1-based.
    pub fn class(&self, i: usize) -> &Scalar {
        &self.classes[i - 1]
    }
}

/// A tuple (B₁,…,B_k) of 2×2 matrices — a candidate point of the
/// representation variety.
///
/// The container is deliberately permissive so that invalid tuples can be
/// loaded and diagnosed; [`rep_validate`] checks the actual invariants
/// (determinants 1, class traces, non-centrality, product = I).
///
/// Serializes as `{"matrices": [[["a","b"],["c","d"]], …]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepTuple {
    matrices: Vec<Mat2>,
}

impl RepTuple {
    pub fn new(matrices: Vec<Mat2>) -> Self {
        RepTuple { matrices }
    }

    pub fn matrices(&self) -> &[Mat2] {
        &self.matrices
    }

    /// Number of punctures k.
    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    /// The matrix B_i, 1-based.
    pub fn matrix(&self, i: usize) -> &Mat2 {
        &self.matrices[i - 1]
    }

    /// The prefix product B₁⋯B_i, 1-based; `prefix_product(0)` is I.
    pub fn prefix_product(&self, i: usize) -> Mat2 {
        self.matrices[..i]
            .iter()
            .fold(Mat2::identity(), |acc, b| &acc * b)
    }

    /// The conjugated tuple (gB₁g⁻¹, …, gB_kg⁻¹).
    pub fn conjugated(&self, g: &Mat2) -> Result<RepTuple, ExactError> {
        let g_inv = g.inverse()?;
        Ok(RepTuple::new(
            self.matrices.iter().map(|b| &(g * b) * &g_inv).collect(),
        ))
    }
}

/// One failed check from [`rep_validate`]; indices are 1-based.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepViolation {
    #[error("length mismatch: expected {expected} matrices, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("determinant != 1 at index {index} (got {det})")]
    DeterminantNotOne { index: usize, det: Scalar },
    #[error("trace mismatch at index {index}: expected {expected}, got {got}")]
    TraceMismatch {
        index: usize,
        expected: Scalar,
        got: Scalar,
    },
    #[error("central matrix at index {index}")]
    CentralMatrix { index: usize },
    #[error("product of all matrices is not the identity")]
    ProductNotIdentity,
}

/// All violations found by [`rep_validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepError {
    violations: Vec<RepViolation>,
}

impl RepError {
    pub fn violations(&self) -> &[RepViolation] {
        &self.violations
    }
}

impl fmt::Display for RepError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid representation tuple: ")?;
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl std::error::Error for RepError {}

/// Checks that `rep` is a valid point for `problem`: det(B_i) = 1,
/// tr(B_i) = c_i + c_i⁻¹, B_i ≠ ±I, and B₁⋯B_k = I. Since c_i ≠ ±1 forces
/// trace ≠ ±2, trace and determinant together pin the conjugacy class.
///
/// Every failed check is reported, each with its (1-based) index.
pub fn rep_validate(rep: &RepTuple, problem: &Problem) -> Result<(), RepError> {
    let mut violations = Vec::new();
    if rep.len() != problem.k() {
        violations.push(RepViolation::LengthMismatch {
            expected: problem.k(),
            got: rep.len(),
        });
        return Err(RepError { violations });
    }
    for (idx, b) in rep.matrices().iter().enumerate() {
        let index = idx + 1;
        let det = b.det();
        if !det.is_one() {
            violations.push(RepViolation::DeterminantNotOne { index, det });
        }
        let c = problem.class(index);
        let expected = c + &c.inv().expect("problem classes are nonzero");
        let got = b.trace();
        if got != expected {
            violations.push(RepViolation::TraceMismatch {
                index,
                expected,
                got,
            });
        }
        if b.is_central() {
            violations.push(RepViolation::CentralMatrix { index });
        }
    }
    if !rep.prefix_product(rep.len()).is_identity() {
        violations.push(RepViolation::ProductNotIdentity);
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(RepError { violations })
    }
}

fn check_genericity_input(classes: &[Scalar]) -> Result<(), CharVarError> {
    if classes.len() > MAX_GENERICITY_CLASSES {
        return Err(CharVarError::TooManyClasses { len: classes.len() });
    }
    for (idx, c) in classes.iter().enumerate() {
        if c.is_zero() {
            return Err(CharVarError::ZeroClass { index: idx + 1 });
        }
    }
    Ok(())
}

/// Depth-first search over sign vectors in lexicographic order with +1 tried
/// before −1, maintaining the partial product. Returns the first vector whose
/// full product is 1 (or −1 when `also_minus`), together with that product.
fn signed_product_hit(classes: &[Scalar], also_minus: bool) -> Option<(Vec<i8>, Scalar)> {
    fn rec(
        classes: &[Scalar],
        inverses: &[Scalar],
        idx: usize,
        acc: &Scalar,
        signs: &mut Vec<i8>,
        also_minus: bool,
    ) -> Option<Scalar> {
        if idx == classes.len() {
            if acc.is_one() || (also_minus && (-acc).is_one()) {
                return Some(acc.clone());
            }
            return None;
        }
        for (sign, factor) in [(1i8, &classes[idx]), (-1i8, &inverses[idx])] {
            signs.push(sign);
            let next = acc * factor;
            if let Some(value) = rec(classes, inverses, idx + 1, &next, signs, also_minus) {
                return Some(value);
            }
            signs.pop();
        }
        None
    }

    let inverses: Vec<Scalar> = classes
        .iter()
        .map(|c| c.inv().expect("zero classes rejected before search"))
        .collect();
    let mut signs = Vec::with_capacity(classes.len());
    rec(
        classes,
        &inverses,
        0,
        &Scalar::one(),
        &mut signs,
        also_minus,
    )
    .map(|value| (signs, value))
}

/// True iff no signed product ∏ c_i^{ε_i} over ε ∈ {1,−1}^k equals 1.
///
/// Brute force with early exit; errors on a zero entry or more than
/// [`MAX_GENERICITY_CLASSES`] classes.
pub fn kostov_generic(classes: &[Scalar]) -> Result<bool, CharVarError> {
    Ok(kostov_witness(classes)?.is_none())
}

/// The first (lexicographic, +1 before −1) sign vector with ∏ c_i^{ε_i} = 1,
/// or `None` when the classes are Kostov-generic.
pub fn kostov_witness(classes: &[Scalar]) -> Result<Option<Vec<i8>>, CharVarError> {
    check_genericity_input(classes)?;
    Ok(signed_product_hit(classes, false).map(|(signs, _)| signs))
}

/// Which contiguous segment of the class vector a genericity witness lives
/// on; indices are 1-based and inclusive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Segment {
    /// Classes c₁..c_i.
    Prefix(usize),
    /// Classes c_i..c_k.
    Suffix(usize),
}

/// A violation of the very-generic condition: a sign vector on a prefix or
/// suffix whose signed product is 1 or −1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericityWitness {
    pub segment: Segment,
    pub signs: Vec<i8>,
    pub value: Scalar,
}

impl fmt::Display for GenericityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let signs: Vec<String> = self.signs.iter().map(|s| format!("{s:+}")).collect();
        match self.segment {
            Segment::Prefix(i) => write!(f, "prefix c_1..c_{i}")?,
            Segment::Suffix(i) => write!(f, "suffix c_{i}..c_k")?,
        }
        write!(
            f,
            " with signs ({}) has product {}",
            signs.join(","),
            self.value
        )
    }
}

/// True iff for every prefix (c₁,…,c_i) and every suffix (c_i,…,c_k) and
/// every sign vector on that segment, the signed product is neither 1 nor −1.
pub fn very_generic(classes: &[Scalar]) -> Result<bool, CharVarError> {
    Ok(very_generic_witness(classes)?.is_none())
}

/// The first violation found by scanning prefixes i = 1..k then suffixes
/// i = 2..k (the full vector is already covered as the i = k prefix), or
/// `None` when the classes are very generic.
pub fn very_generic_witness(classes: &[Scalar]) -> Result<Option<GenericityWitness>, CharVarError> {
    check_genericity_input(classes)?;
    let k = classes.len();
    for i in 1..=k {
        if let Some((signs, value)) = signed_product_hit(&classes[..i], true) {
            return Ok(Some(GenericityWitness {
                segment: Segment::Prefix(i),
                signs,
                value,
            }));
        }
    }
    for i in 2..=k {
        if let Some((signs, value)) = signed_product_hit(&classes[i - 1..], true) {
            return Ok(Some(GenericityWitness {
                segment: Segment::Suffix(i),
                signs,
                value,
            }));
        }
    }
    Ok(None)
}

/// The trace classification of a determinant-1 matrix: ±I, unipotent with
/// trace ±2, or regular (trace ∉ {2, −2}).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonodromyClass {
    CentralPlus,
    CentralMinus,
    UnipotentPlus,
    UnipotentMinus,
    Regular { trace: Scalar },
}

impl MonodromyClass {
    pub fn trace(&self) -> Scalar {
        match self {
            MonodromyClass::CentralPlus | MonodromyClass::UnipotentPlus => Scalar::from_int(2),
            MonodromyClass::CentralMinus | MonodromyClass::UnipotentMinus => Scalar::from_int(-2),
            MonodromyClass::Regular { trace } => trace.clone(),
        }
    }

    pub fn is_regular(&self) -> bool {
        matches!(self, MonodromyClass::Regular { .. })
    }

    pub fn tag(&self) -> &'static str {
        match self {
            MonodromyClass::CentralPlus => "central_plus",
            MonodromyClass::CentralMinus => "central_minus",
            MonodromyClass::UnipotentPlus => "unipotent_plus",
            MonodromyClass::UnipotentMinus => "unipotent_minus",
            MonodromyClass::Regular { .. } => "regular",
        }
    }
}

impl Serialize for MonodromyClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.tag())
    }
}

impl fmt::Display for MonodromyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonodromyClass::Regular { trace } => write!(f, "regular (trace {trace})"),
            other => write!(f, "{}", other.tag()),
        }
    }
}

/// Classifies a determinant-1 matrix per [`MonodromyClass`].
pub fn classify_circle_monodromy(m: &Mat2) -> Result<MonodromyClass, CharVarError> {
    let det = m.det();
    if !det.is_one() {
        return Err(CharVarError::DeterminantNotOne { det });
    }
    let trace = m.trace();
    let two = Scalar::from_int(2);
    if trace == two {
        if m.is_central() {
            Ok(MonodromyClass::CentralPlus)
        } else {
            Ok(MonodromyClass::UnipotentPlus)
        }
    } else if trace == -&two {
        if m.is_central() {
            Ok(MonodromyClass::CentralMinus)
        } else {
            Ok(MonodromyClass::UnipotentMinus)
        }
    } else {
        Ok(MonodromyClass::Regular { trace })
    }
}

/// The restriction of a tuple to the i-th pair of pants: the two generators
/// (M_prev = B₁⋯B_{i−1} and B_i) of its fundamental-group image, plus the
/// exit monodromy M_i = M_prev·B_i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PantsData {
    index: usize,
    m_prev: Mat2,
    b: Mat2,
    exit: Mat2,
}

impl PantsData {
    pub fn index(&self) -> usize {
        self.index
    }

    /// M_prev = B₁⋯B_{i−1}.
    pub fn m_prev(&self) -> &Mat2 {
        &self.m_prev
    }

    /// The puncture monodromy B_i.
    pub fn b(&self) -> &Mat2 {
        &self.b
    }

    /// The exit monodromy M_i = M_prev·B_i.
    pub fn exit(&self) -> &Mat2 {
        &self.exit
    }
}

/// The trace of B₁⋯B_i around the i-th cutting circle, for 2 ≤ i ≤ k−2.
///
/// Convention-independent: tr(M) = tr(M⁻¹) for determinant-1 matrices, so the
/// circle's orientation does not matter.
pub fn circle_trace(rep: &RepTuple, i: usize) -> Result<Scalar, CharVarError> {
    let k = rep.len();
    if i < 2 || i + 2 > k {
        return Err(CharVarError::IndexOutOfRange {
            index: i,
            lo: 2,
            hi: k.saturating_sub(2),
        });
    }
    Ok(rep.prefix_product(i).trace())
}

/// The pants restriction (M_prev, B_i, M_i) for 2 ≤ i ≤ k−1.
pub fn pants_restriction(rep: &RepTuple, i: usize) -> Result<PantsData, CharVarError> {
    let k = rep.len();
    if i < 2 || i + 1 > k {
        return Err(CharVarError::IndexOutOfRange {
            index: i,
            lo: 2,
            hi: k.saturating_sub(1),
        });
    }
    let m_prev = rep.prefix_product(i - 1);
    let b = rep.matrix(i).clone();
    let exit = &m_prev * &b;
    Ok(PantsData {
        index: i,
        m_prev,
        b,
        exit,
    })
}

/// Pants stability: false (unstable) iff the c_i⁻¹-eigenline of B_i is
/// invariant under M_prev — equivalently under M_i, since the line is
/// B_i-invariant by construction, so the orientation of the entry circle is
/// immaterial.
///
/// Preconditions (checked): c_i ∉ {0, 1, −1}, det(B_i) = 1, and
/// tr(B_i) = c_i + c_i⁻¹, which make the eigenline unique.
pub fn is_pants_stable(pants: &PantsData, c: &Scalar) -> Result<bool, CharVarError> {
    let c_inv = c
        .inv()
        .map_err(|_| CharVarError::StabilityPrecondition("class eigenvalue is zero".into()))?;
    if c.is_one() || (-c).is_one() {
        return Err(CharVarError::StabilityPrecondition(
            "class eigenvalue must not be ±1".into(),
        ));
    }
    if !pants.b().det().is_one() {
        return Err(CharVarError::StabilityPrecondition(format!(
            "det(B_{}) != 1",
            pants.index()
        )));
    }
    if pants.b().trace() != c + &c_inv {
        return Err(CharVarError::StabilityPrecondition(format!(
            "tr(B_{}) != c + 1/c",
            pants.index()
        )));
    }
    let line = pants.b().eigenline(&c_inv)?;
    let v = line.lift();
    let mv = pants.m_prev().apply(&v);
    // The line is M_prev-invariant iff M_prev·v and v are parallel.
    let cross = &(&mv.0 * &v.1) - &(&mv.1 * &v.0);
    Ok(!cross.is_zero())
}

/// Stable/unstable flag of one pants restriction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Stability {
    Stable,
    Unstable,
}

/// The stratum datum α = (σ₂,…,σ_{k−1}; G₂,…,G_{k−2}): one stability flag per
/// pants and one monodromy class per interior cutting circle.
///
/// Serializes as `{"sigma": ["stable", …], "gclass": ["regular", …]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StratumDatum {
    sigma: Vec<Stability>,
    gclass: Vec<MonodromyClass>,
}

impl StratumDatum {
    /// Stability flags, indexed i = 2..k−1 (length k−2).
    pub fn sigma(&self) -> &[Stability] {
        &self.sigma
    }

    /// Circle monodromy classes, indexed i = 2..k−2 (length k−3).
    pub fn gclass(&self) -> &[MonodromyClass] {
        &self.gclass
    }

    /// True iff the point lies in the open stratum M′: all pants stable and
    /// all interior circle monodromies regular.
    pub fn in_open_stratum(&self) -> bool {
        self.sigma.iter().all(|s| *s == Stability::Stable)
            && self.gclass.iter().all(|g| g.is_regular())
    }
}

/// Computes the stratum datum of a validated tuple: stability for each pants
/// i = 2..k−1 and the monodromy class of B₁⋯B_i for each i = 2..k−2.
pub fn classify_stratum(rep: &RepTuple, problem: &Problem) -> Result<StratumDatum, CharVarError> {
    rep_validate(rep, problem)?;
    let k = problem.k();
    let mut sigma = Vec::with_capacity(k - 2);
    for i in 2..=k - 1 {
        let pants = pants_restriction(rep, i)?;
        let stable = is_pants_stable(&pants, problem.class(i))?;
        sigma.push(if stable {
            Stability::Stable
        } else {
            Stability::Unstable
        });
    }
    let mut gclass = Vec::with_capacity(k.saturating_sub(3));
    for i in 2..=k - 2 {
        gclass.push(classify_circle_monodromy(&rep.prefix_product(i))?);
    }
    Ok(StratumDatum { sigma, gclass })
}

// ---------------------------------------------------------------------------
// Irreducibility.
//
// A line [x:y] is invariant under B = [[a,b],[c,d]] iff the quadratic form
// Q_B(x,y) = −c·x² + (a−d)·xy + b·y² vanishes on it. The tuple is reducible
// iff all its matrices share a projective root of their forms over the
// algebraic closure — decided rationally via a polynomial gcd.

type Poly = Vec<Scalar>; // coefficients, constant term first

fn poly_trim(p: &mut Poly) {
    while p.last().is_some_and(Scalar::is_zero) {
        p.pop();
    }
}

fn poly_rem(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    poly_trim(&mut r);
    let lead = b.last().expect("divisor is nonzero");
    while r.len() >= b.len() {
        let factor = r
            .last()
            .expect("trimmed")
            .div(lead)
            .expect("nonzero leading coefficient");
        let shift = r.len() - b.len();
        for (i, coeff) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &(&factor * coeff);
        }
        r.pop(); // leading term cancels exactly
        poly_trim(&mut r);
    }
    r
}

fn poly_gcd(a: Poly, b: Poly) -> Poly {
    let (mut a, mut b) = (a, b);
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

/// True iff the matrices share no common invariant line over the base field
/// or any quadratic extension.
///
/// An all-central tuple is reducible (every line is invariant). Otherwise a
/// common invariant line is a common projective root of the nonzero
/// invariance forms: the root [1:0] exists iff every form has zero
/// x²-coefficient, and finite roots [s:1] exist iff the gcd of the
/// dehomogenized forms has positive degree — covering irrational and complex
/// roots without leaving ℚ.
pub fn is_irreducible(rep: &RepTuple) -> bool {
    let mut forms: Vec<(Scalar, Scalar, Scalar)> = Vec::new();
    for b in rep.matrices() {
        let alpha = -b.entry(1, 0);
        let beta = b.entry(0, 0) - b.entry(1, 1);
        let gamma = b.entry(0, 1).clone();
        if !(alpha.is_zero() && beta.is_zero() && gamma.is_zero()) {
            forms.push((alpha, beta, gamma));
        }
    }
    if forms.is_empty() {
        return false; // every matrix central: all lines invariant
    }
    if forms.iter().all(|(alpha, _, _)| alpha.is_zero()) {
        return false; // common line [1:0]
    }
    let mut gcd: Poly = {
        let (alpha, beta, gamma) = &forms[0];
        vec![gamma.clone(), beta.clone(), alpha.clone()]
    };
    for (alpha, beta, gamma) in &forms[1..] {
        gcd = poly_gcd(gcd, vec![gamma.clone(), beta.clone(), alpha.clone()]);
        if gcd.len() <= 1 {
            return true; // constant gcd: no common finite root
        }
    }
    gcd.len() <= 1
}

// ---------------------------------------------------------------------------
// Conjugator search.

/// Basis of the kernel of a system of linear forms on 4 unknowns.
fn kernel4(mut rows: Vec<[Scalar; 4]>) -> Vec<[Scalar; 4]> {
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut rank = 0usize;
    for col in 0..4 {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].inv().expect("pivot is nonzero");
        for entry in rows[rank].iter_mut() {
            *entry = &*entry * &inv;
        }
        let lead = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let factor = row[col].clone();
                for (entry, lead_entry) in row.iter_mut().zip(&lead) {
                    *entry = &*entry - &(&factor * lead_entry);
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
    }
    let mut basis = Vec::new();
    for free in 0..4 {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = [
            Scalar::zero(),
            Scalar::zero(),
            Scalar::zero(),
            Scalar::zero(),
        ];
        v[free] = Scalar::one();
        for (row, &col) in pivot_cols.iter().enumerate() {
            v[col] = -&rows[row][free];
        }
        basis.push(v);
    }
    basis
}

/// Finds g with g·B_i·g⁻¹ = B'_i for all i, as a canonical projective
/// representative, or `None` when the tuples are not conjugate.
///
/// Solves the linear system B'_i·g − g·B_i = 0 exactly; the intertwiner space
/// has dimension ≤ 4 and contains an invertible element iff the determinant —
/// a quadratic form on that space — is not identically zero, which is decided
/// by evaluating on the grid {0,1,2}^dim (a quadratic vanishing on a 3-point
/// grid per variable vanishes identically).
pub fn find_conjugator(r1: &RepTuple, r2: &RepTuple) -> Option<ProjMat2> {
    if r1.len() != r2.len() {
        return None;
    }
    let mut rows: Vec<[Scalar; 4]> = Vec::with_capacity(4 * r1.len());
    for (b, bp) in r1.matrices().iter().zip(r2.matrices()) {
        // Unknowns g_{mc} indexed 2m+c; equation (r,s):
        //   Σ_m B'[r][m]·g[m][s] − Σ_m g[r][m]·B[m][s] = 0.
        for r in 0..2 {
            for s in 0..2 {
                let mut row = [
                    Scalar::zero(),
                    Scalar::zero(),
                    Scalar::zero(),
                    Scalar::zero(),
                ];
                for m in 0..2 {
                    row[2 * m + s] = &row[2 * m + s] + bp.entry(r, m);
                    row[2 * r + m] = &row[2 * r + m] - b.entry(m, s);
                }
                rows.push(row);
            }
        }
    }
    let basis = kernel4(rows);
    if basis.is_empty() {
        return None;
    }
    let dim = basis.len();
    let mut coeffs = vec![0u8; dim];
    loop {
        // advance the base-3 counter; the all-zero combination is skipped
        let mut pos = 0;
        loop {
            if pos == dim {
                return None;
            }
            coeffs[pos] += 1;
            if coeffs[pos] < 3 {
                break;
            }
            coeffs[pos] = 0;
            pos += 1;
        }
        let mut g = [
            [Scalar::zero(), Scalar::zero()],
            [Scalar::zero(), Scalar::zero()],
        ];
        for (vec, &weight) in basis.iter().zip(&coeffs) {
            if weight == 0 {
                continue;
            }
            let w = Scalar::from_int(i64::from(weight));
            for idx in 0..4 {
                g[idx / 2][idx % 2] = &g[idx / 2][idx % 2] + &(&w * &vec[idx]);
            }
        }
        let g = Mat2::new(g);
        if !g.det().is_zero() {
            return Some(proj_normalize(&g).expect("determinant checked nonzero"));
        }
    }
}

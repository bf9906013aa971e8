//! Exact Fenchel–Nielsen-type coordinates on the open stratum.
//!
//! The open stratum M′ of the moduli space is parametrized by k−3 points of
//! the quasi-projective surface Q = {(t, [p:q]) : t ∉ {2,−2}, p²+tpq+q² ≠ 0}:
//! one interior circle trace t_i plus one twist parameter [p_i:q_i] per
//! cutting circle. [`fn_decode`] assembles a representative tuple from
//! coordinates; [`fn_encode`] recovers the coordinates from any point of the
//! open stratum. Both directions are exact over ℚ: the square roots appearing
//! in the classical normal form are eliminated by the projective identity
//! diag(c^{1/2}, c^{−1/2}) ≡ diag(c, 1), which here is an exact matrix
//! identity because the scalars cancel.
//!
//! [`unstable_split`]/[`unstable_unsplit`] realize the abelianization of an
//! unstable point: a tuple whose i-th pants is unstable splits into a shorter
//! tuple together with the single coordinate y, and back.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::charvar::{
    circle_trace, rep_validate, very_generic_witness, CharVarError, GenericityWitness, Problem,
    RepError, RepTuple, MAX_GENERICITY_CLASSES,
};
use crate::exact_linear::{proj_normalize, ExactError, Mat2, ProjMat2, ProjPoint, Scalar};

/// Errors from coordinate encoding/decoding and the unstable splitting.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FnError {
    #[error("class eigenvalue {value} must not be 0, 1, or -1")]
    ClassDegenerate { value: Scalar },
    #[error("t = {t} is excluded: the circle trace must not be 2 or -2")]
    DegenerateTrace { t: Scalar },
    #[error("the commutant form p^2 + t*p*q + q^2 vanishes at t = {t}, [{p}:{q}]")]
    FormVanishes { t: Scalar, p: Scalar, q: Scalar },
    #[error("expected {expected} coordinate points, got {got}")]
    WrongCoordinateCount { expected: usize, got: usize },
    #[error("classes are not very generic: {0}")]
    NotVeryGeneric(GenericityWitness),
    #[error("circle {index} has degenerate trace {trace}")]
    CircleTraceDegenerate { index: usize, trace: Scalar },
    #[error("pants {index} unstable")]
    PantsUnstable { index: usize },
    #[error("internal consistency failure: glueing matrix at circle {index} does not commute")]
    NotCommuting { index: usize },
    #[error("matrix is not in the commutant of the trace-{t} normal form")]
    NotInCommutant { t: Scalar },
    #[error("split input invariant violated: {0}")]
    SplitInvariant(String),
    #[error("transformed product relation A'_1..A'_(i-1) * Rprev != I")]
    RelationViolated,
    #[error("sampling height must be at least 1")]
    HeightTooSmall,
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    CharVar(#[from] CharVarError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// A point of the coordinate surface Q: a trace t ∉ {2,−2} and a projective
/// twist [p:q] with p² + tpq + q² ≠ 0.
///
/// Serializes as `{"t": "0", "p": "1", "q": "0"}` with [p:q] canonical.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "QPointWire", into = "QPointWire")]
pub struct QPoint {
    t: Scalar,
    point: ProjPoint,
}

#[derive(Serialize, Deserialize)]
struct QPointWire {
    t: Scalar,
    p: Scalar,
    q: Scalar,
}

impl From<QPoint> for QPointWire {
    fn from(qp: QPoint) -> Self {
        QPointWire {
            p: qp.point.p().clone(),
            q: qp.point.q().clone(),
            t: qp.t,
        }
    }
}

impl TryFrom<QPointWire> for QPoint {
    type Error = FnError;
    fn try_from(wire: QPointWire) -> Result<Self, Self::Error> {
        QPoint::new(wire.t, ProjPoint::new(wire.p, wire.q)?)
    }
}

impl QPoint {
    pub fn new(t: Scalar, point: ProjPoint) -> Result<Self, FnError> {
        let two = Scalar::from_int(2);
        if t == two || t == -&two {
            return Err(FnError::DegenerateTrace { t });
        }
        if commutant_form(&t, point.p(), point.q()).is_zero() {
            return Err(FnError::FormVanishes {
                t,
                p: point.p().clone(),
                q: point.q().clone(),
            });
        }
        Ok(QPoint { t, point })
    }

    pub fn t(&self) -> &Scalar {
        &self.t
    }

    pub fn point(&self) -> &ProjPoint {
        &self.point
    }
}

/// p² + t·p·q + q², the determinant of the commutant lift p·I + q·T(t).
fn commutant_form(t: &Scalar, p: &Scalar, q: &Scalar) -> Scalar {
    &(&(p * p) + &(&(t * p) * q)) + &(q * q)
}

/// A full coordinate vector: one [`QPoint`] per interior cutting circle
/// (length k−3). Serializes as `{"coords": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FNCoords {
    coords: Vec<QPoint>,
}

impl FNCoords {
    pub fn new(coords: Vec<QPoint>) -> Self {
        FNCoords { coords }
    }

    pub fn coords(&self) -> &[QPoint] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }
}

/// The local normal-form matrices of one pants: A = diag(c, c⁻¹), the exit
/// normal form R with tr(R) = t and upper-right entry 1, the entry normal
/// form Rprev = A·R with tr(Rprev) = t_prev, and the coefficients u, w of R.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PantsMatrices {
    a: Mat2,
    r: Mat2,
    rprev: Mat2,
    u: Scalar,
    w: Scalar,
}

impl PantsMatrices {
    /// diag(c, c⁻¹).
    pub fn a(&self) -> &Mat2 {
        &self.a
    }

    /// [[u, 1], [w, t−u]] — determinant 1, trace t.
    pub fn r(&self) -> &Mat2 {
        &self.r
    }

    /// A·R — determinant 1, trace t_prev.
    pub fn rprev(&self) -> &Mat2 {
        &self.rprev
    }

    pub fn u(&self) -> &Scalar {
        &self.u
    }

    pub fn w(&self) -> &Scalar {
        &self.w
    }
}

fn check_class(c: &Scalar) -> Result<(Scalar, Scalar), FnError> {
    if c.is_zero() || c.is_one() || (-c).is_one() {
        return Err(FnError::ClassDegenerate { value: c.clone() });
    }
    Ok((c.clone(), c.inv().expect("nonzero")))
}

/// u = (t_prev − c⁻¹·t) / (c − c⁻¹), the lower-left coefficient of the
/// unipotent change of frame; the denominator is nonzero because c ≠ ±1.
pub fn u_coeff(t_prev: &Scalar, t: &Scalar, c: &Scalar) -> Result<Scalar, FnError> {
    let (c, c_inv) = check_class(c)?;
    let numer = t_prev - &(&c_inv * t);
    let denom = &c - &c_inv;
    Ok(numer.div(&denom).expect("c != ±1 makes c - 1/c nonzero"))
}

/// The normal-form matrices of the pants with entry trace t_prev, exit trace
/// t, and puncture class c.
pub fn pants_matrices(t_prev: &Scalar, t: &Scalar, c: &Scalar) -> Result<PantsMatrices, FnError> {
    let u = u_coeff(t_prev, t, c)?;
    let (c, c_inv) = check_class(c)?;
    let w = &(&u * &(t - &u)) - &Scalar::one();
    let a = Mat2::diag(&c, &c_inv);
    let r = Mat2::new([[u.clone(), Scalar::one()], [w.clone(), t - &u]]);
    let rprev = &a * &r;
    Ok(PantsMatrices { a, r, rprev, u, w })
}

/// The trace-t normal form [[0, 1], [−1, t]].
pub fn t_matrix(t: &Scalar) -> Mat2 {
    Mat2::new([
        [Scalar::zero(), Scalar::one()],
        [-&Scalar::one(), t.clone()],
    ])
}

/// The lower-triangular unipotent [[1, 0], [u, 1]].
pub fn u_matrix(u: &Scalar) -> Mat2 {
    Mat2::new([[Scalar::one(), Scalar::zero()], [u.clone(), Scalar::one()]])
}

/// The projective matrix p·I + q·T(t) = [[p, q], [−q, p+tq]] commuting with
/// [`t_matrix`]; its lift has determinant p² + tpq + q² ≠ 0.
pub fn q_commutant(qp: &QPoint) -> ProjMat2 {
    let (p, q) = qp.point().lift();
    let m = Mat2::new([[p.clone(), q.clone()], [-&q, &p + &(qp.t() * &q)]]);
    proj_normalize(&m).expect("commutant form nonzero means the lift is invertible")
}

/// Reads the point [p:q] back from a commutant representative — the inverse
/// of [`q_commutant`]. Errors when the matrix does not commute with the
/// trace-t normal form (equivalently, is not of the shape p·I + q·T(t)).
pub fn qpoint_from_commutant(t: &Scalar, q_mat: &ProjMat2) -> Result<QPoint, FnError> {
    let rep = q_mat.rep();
    let p = rep.entry(0, 0).clone();
    let q = rep.entry(0, 1).clone();
    let expected_lower = [-&q, &p + &(t * &q)];
    if rep.entry(1, 0) != &expected_lower[0] || rep.entry(1, 1) != &expected_lower[1] {
        return Err(FnError::NotInCommutant { t: t.clone() });
    }
    QPoint::new(t.clone(), ProjPoint::new(p, q)?)
}

/// The boundary traces forced by the end conventions together with the
/// interior traces from the coordinates: t₁ = c₁+c₁⁻¹, t_i = coords[i−2].t,
/// t_{k−1} = c_k+c_k⁻¹, indexed so that `ts[i-1]` is t_i.
fn trace_vector(problem: &Problem, coords: &FNCoords) -> Vec<Scalar> {
    let k = problem.k();
    let mut ts = Vec::with_capacity(k - 1);
    let c1 = problem.class(1);
    ts.push(c1 + &c1.inv().expect("classes nonzero"));
    for qp in coords.coords() {
        ts.push(qp.t().clone());
    }
    let ck = problem.class(k);
    ts.push(ck + &ck.inv().expect("classes nonzero"));
    ts
}

/// Builds the representation tuple with the given coordinates: the unique
/// point of the open stratum over (t_i, [p_i:q_i]), presented in the frame of
/// the first pants.
///
/// The output is exact and satisfies, by construction: `rep_validate` passes,
/// `circle_trace(rep, i) = coords[i−2].t`, every pants is stable, every
/// interior monodromy is regular, and the tuple is irreducible.
///
/// Requires very generic classes (checked when k ≤
/// [`MAX_GENERICITY_CLASSES`]; beyond that the check is skipped as
/// infeasible) and exactly k−3 coordinate points.
pub fn fn_decode(coords: &FNCoords, problem: &Problem) -> Result<RepTuple, FnError> {
    let k = problem.k();
    if coords.len() != k - 3 {
        return Err(FnError::WrongCoordinateCount {
            expected: k - 3,
            got: coords.len(),
        });
    }
    if k <= MAX_GENERICITY_CLASSES {
        if let Some(witness) = very_generic_witness(problem.classes())? {
            return Err(FnError::NotVeryGeneric(witness));
        }
    }
    let ts = trace_vector(problem, coords);
    // pants[i-2] holds the normal forms of pants i, for i = 2..k-1
    let mut pants = Vec::with_capacity(k - 2);
    for i in 2..=k - 1 {
        pants.push(pants_matrices(&ts[i - 2], &ts[i - 1], problem.class(i))?);
    }
    // transports: L_2 = I, L_{i+1} = P_i L_i with
    // P_i = (diag(1, c_{i+1}) U_{i+1})^{-1} Q_i U_i
    let mut transports = vec![Mat2::identity()];
    for i in 2..=k - 2 {
        let q_i = q_commutant(&coords.coords()[i - 2]);
        let u_i = u_matrix(pants[i - 2].u());
        let u_next = u_matrix(pants[i - 1].u());
        let d = Mat2::diag(&Scalar::one(), problem.class(i + 1));
        let p_i = &(&(&d * &u_next).inverse()? * q_i.rep()) * &u_i;
        let l_next = &p_i * transports.last().expect("seeded with identity");
        transports.push(l_next);
    }
    let mut matrices = Vec::with_capacity(k);
    matrices.push(pants[0].rprev().inverse()?); // B₁ = (A₂R₂)⁻¹
    for i in 2..=k - 1 {
        let l = &transports[i - 2];
        matrices.push(pants[i - 2].a().conjugate_by(&l.inverse()?)?);
    }
    let l_last = transports.last().expect("nonempty");
    matrices.push(
        pants
            .last()
            .expect("nonempty")
            .r()
            .conjugate_by(&l_last.inverse()?)?,
    );
    Ok(RepTuple::new(matrices))
}

/// Recovers the coordinates of a point of the open stratum: for each pants
/// the eigenvector frame of B_i (unique up to scalar once the exit normal
/// form is scaled to have upper-right entry 1 — nonzero precisely by
/// stability), then the glueing commutant between consecutive frames.
///
/// Errors name the first failing circle (degenerate trace) or pants
/// (unstable). `fn_encode(fn_decode(x)) = x` exactly, and
/// `fn_decode(fn_encode(r))` is conjugate to `r`.
pub fn fn_encode(rep: &RepTuple, problem: &Problem) -> Result<FNCoords, FnError> {
    rep_validate(rep, problem)?;
    let k = problem.k();
    let two = Scalar::from_int(2);
    let mut ts = Vec::with_capacity(k - 1);
    let c1 = problem.class(1);
    ts.push(c1 + &c1.inv().expect("classes nonzero"));
    for i in 2..=k - 2 {
        let t = circle_trace(rep, i)?;
        if t == two || t == -&two {
            return Err(FnError::CircleTraceDegenerate { index: i, trace: t });
        }
        ts.push(t);
    }
    let ck = problem.class(k);
    ts.push(ck + &ck.inv().expect("classes nonzero"));

    // frames[i-2] is h_i with h_i B_i h_i⁻¹ = A_i and h_i M_i⁻¹ h_i⁻¹ = R_i
    let mut frames = Vec::with_capacity(k - 2);
    let mut pants = Vec::with_capacity(k - 2);
    for i in 2..=k - 1 {
        let c = problem.class(i);
        let c_inv = c.inv().expect("classes nonzero");
        let b = rep.matrix(i);
        let v1 = b.eigenline(c)?.lift();
        let v2 = b.eigenline(&c_inv)?.lift();
        let m_inv = rep.prefix_product(i).inverse()?;
        // candidate frame: columns are the c- and c⁻¹-eigenvectors
        let h_inv = Mat2::new([[v1.0.clone(), v2.0.clone()], [v1.1.clone(), v2.1.clone()]]);
        let n = m_inv.conjugate_by(&h_inv.inverse()?)?;
        let upper_right = n.entry(0, 1);
        if upper_right.is_zero() {
            return Err(FnError::PantsUnstable { index: i });
        }
        // rescale the second eigenvector so the exit normal form gets a 1 in
        // the upper right corner
        let scale = upper_right.inv().expect("nonzero by stability");
        let h_inv = Mat2::new([
            [v1.0.clone(), &v2.0 * &scale],
            [v1.1.clone(), &v2.1 * &scale],
        ]);
        let h = h_inv.inverse()?;
        let pm = pants_matrices(&ts[i - 2], &ts[i - 1], c)?;
        let n = m_inv.conjugate_by(&h)?;
        if &n != pm.r() {
            return Err(FnError::NotCommuting { index: i });
        }
        frames.push(h);
        pants.push(pm);
    }

    let mut coords = Vec::with_capacity(k - 3);
    for i in 2..=k - 2 {
        let p_i = &frames[i - 1] * &frames[i - 2].inverse()?;
        let d = Mat2::diag(&Scalar::one(), problem.class(i + 1));
        let u_i = u_matrix(pants[i - 2].u());
        let u_next = u_matrix(pants[i - 1].u());
        let q_lift = &(&(&d * &u_next) * &p_i) * &u_i.inverse()?;
        let t_i = &ts[i - 1];
        let t_mat = t_matrix(t_i);
        if &t_mat * &q_lift != &q_lift * &t_mat {
            return Err(FnError::NotCommuting { index: i });
        }
        let q_proj = proj_normalize(&q_lift)?;
        coords.push(qpoint_from_commutant(t_i, &q_proj)?);
    }
    Ok(FNCoords::new(coords))
}

/// The input of the unstable splitting: a partial tuple (A₁,…,A_i) with
/// A₁⋯A_i·R = I, where R = diag(b⁻¹, b) is the (regular, diagonalized) exit
/// monodromy, A_i is lower triangular with diagonal (c, c⁻¹) — its
/// c⁻¹-eigenline e₂ is R-invariant, which is the instability — and
/// b_prev·c⁻¹·b = 1 ties the entry eigenvalue to the exit one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitInput {
    tuple: Vec<Mat2>,
    r: Mat2,
    b_prev: Scalar,
    b: Scalar,
    c: Scalar,
}

impl SplitInput {
    /// Validates all invariants; `r` is constructed as diag(b⁻¹, b).
    pub fn new(tuple: Vec<Mat2>, b_prev: Scalar, b: Scalar, c: Scalar) -> Result<Self, FnError> {
        if tuple.len() < 2 {
            return Err(FnError::SplitInvariant(
                "tuple must contain A_1..A_i with i >= 2".into(),
            ));
        }
        for (name, v) in [("b_prev", &b_prev), ("b", &b)] {
            if v.is_zero() || v.is_one() || (-v).is_one() {
                return Err(FnError::SplitInvariant(format!(
                    "{name} = {v} has {name} = 1/{name}"
                )));
            }
        }
        let c_inv = c
            .inv()
            .map_err(|_| FnError::SplitInvariant("c must be nonzero".into()))?;
        if !(&(&b_prev * &c_inv) * &b).is_one() {
            return Err(FnError::SplitInvariant("b_prev * c^-1 * b != 1".into()));
        }
        let a_i = tuple.last().expect("len >= 2");
        if !a_i.entry(0, 1).is_zero() || a_i.entry(0, 0) != &c || a_i.entry(1, 1) != &c_inv {
            return Err(FnError::SplitInvariant(
                "A_i must be lower triangular with diagonal (c, c^-1)".into(),
            ));
        }
        let r = Mat2::diag(&b.inv().expect("b nonzero"), &b);
        let product = tuple.iter().fold(Mat2::identity(), |acc, a| &acc * a);
        if !(&product * &r).is_identity() {
            return Err(FnError::SplitInvariant("A_1..A_i * R != I".into()));
        }
        Ok(SplitInput {
            tuple,
            r,
            b_prev,
            b,
            c,
        })
    }

    /// The partial tuple (A₁,…,A_i).
    pub fn tuple(&self) -> &[Mat2] {
        &self.tuple
    }

    /// diag(b⁻¹, b).
    pub fn r(&self) -> &Mat2 {
        &self.r
    }

    pub fn b_prev(&self) -> &Scalar {
        &self.b_prev
    }

    pub fn b(&self) -> &Scalar {
        &self.b
    }

    pub fn c(&self) -> &Scalar {
        &self.c
    }
}

/// Splits an unstable configuration into its abelianized data: the
/// coordinate y (lower-left of A_i), the conjugated prefix tuple
/// A'_j = U⁻¹·A_j·U for j < i with U = u_matrix(−b⁻¹y / (b_prev⁻¹ − b_prev)),
/// and Rprev = diag(b_prev, b_prev⁻¹). The transformed relation
/// A'₁⋯A'_{i−1}·Rprev = I holds exactly.
///
/// Infallible: every [`SplitInput`] invariant needed here is enforced at
/// construction.
pub fn unstable_split(inp: &SplitInput) -> (Scalar, Vec<Mat2>, Mat2) {
    let a_i = inp.tuple.last().expect("len >= 2");
    let y = a_i.entry(1, 0).clone();
    let b_prev_inv = inp.b_prev.inv().expect("b_prev nonzero");
    let denom = &b_prev_inv - &inp.b_prev;
    let u = (-&(&inp.b.inv().expect("b nonzero") * &y))
        .div(&denom)
        .expect("b_prev != 1/b_prev");
    let u_mat = u_matrix(&u);
    let u_inv = u_matrix(&-&u);
    let tuple2: Vec<Mat2> = inp.tuple[..inp.tuple.len() - 1]
        .iter()
        .map(|a| &(&u_inv * a) * &u_mat)
        .collect();
    let rprev = Mat2::diag(&inp.b_prev, &b_prev_inv);
    debug_assert!({
        let product = tuple2.iter().fold(Mat2::identity(), |acc, a| &acc * a);
        (&product * &rprev).is_identity()
    });
    (y, tuple2, rprev)
}

/// Rebuilds the unstable configuration from its abelianized data: checks the
/// transformed relation A'₁⋯A'_{i−1}·diag(b_prev, b_prev⁻¹) = I, undoes the
/// conjugation (A_j = U·A'_j·U⁻¹), and appends A_i = [[c, 0], [y, c⁻¹]].
/// Mutually inverse with [`unstable_split`].
pub fn unstable_unsplit(
    y: &Scalar,
    tuple2: &[Mat2],
    b_prev: &Scalar,
    b: &Scalar,
    c: &Scalar,
) -> Result<SplitInput, FnError> {
    for (name, v) in [("b_prev", b_prev), ("b", b)] {
        if v.is_zero() || v.is_one() || (-v).is_one() {
            return Err(FnError::SplitInvariant(format!(
                "{name} = {v} has {name} = 1/{name}"
            )));
        }
    }
    let c_inv = c
        .inv()
        .map_err(|_| FnError::SplitInvariant("c must be nonzero".into()))?;
    if !(&(b_prev * &c_inv) * b).is_one() {
        return Err(FnError::SplitInvariant("b_prev * c^-1 * b != 1".into()));
    }
    let b_prev_inv = b_prev.inv().expect("nonzero");
    let rprev = Mat2::diag(b_prev, &b_prev_inv);
    let product = tuple2.iter().fold(Mat2::identity(), |acc, a| &acc * a);
    if !(&product * &rprev).is_identity() {
        return Err(FnError::RelationViolated);
    }
    let denom = &b_prev_inv - b_prev;
    let u = (-&(&b.inv().expect("nonzero") * y))
        .div(&denom)
        .expect("b_prev != 1/b_prev");
    let u_mat = u_matrix(&u);
    let u_inv = u_matrix(&-&u);
    let mut tuple: Vec<Mat2> = tuple2.iter().map(|a| &(&u_mat * a) * &u_inv).collect();
    tuple.push(Mat2::new([[c.clone(), Scalar::zero()], [y.clone(), c_inv]]));
    SplitInput::new(tuple, b_prev.clone(), b.clone(), c.clone())
}

/// Draws a scalar n/d with |n| ≤ height and 1 ≤ d ≤ height, uniformly over
/// the (2·height+1) × height grid before reduction.
///
/// The scheme is frozen: one `next_u64` for the numerator mapped by modulo
/// into [−height, height], then one for the denominator mapped into
/// [1, height]. Changing it would silently re-seed every stored regression
/// value.
fn draw_scalar(rng: &mut ChaCha8Rng, height: u32) -> Scalar {
    let span = 2 * u64::from(height) + 1;
    let numer = (rng.next_u64() % span) as i64 - i64::from(height);
    let denom = 1 + (rng.next_u64() % u64::from(height)) as i64;
    Scalar::fraction(numer, denom).expect("denominator is positive")
}

/// Deterministic pseudorandom coordinates for `problem`: k−3 points, each
/// drawn as t, then p, then q (see [`draw_scalar`] for the frozen scheme),
/// resampling t while t ∈ {2,−2} and (p, q) while p² + tpq + q² = 0. The same
/// (seed, problem, height) always yields the same output.
pub fn sample_fn(problem: &Problem, seed: u64, height: u32) -> Result<FNCoords, FnError> {
    if height < 1 {
        return Err(FnError::HeightTooSmall);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let two = Scalar::from_int(2);
    let mut coords = Vec::with_capacity(problem.k() - 3);
    for _ in 0..problem.k() - 3 {
        let t = loop {
            let t = draw_scalar(&mut rng, height);
            if t != two && t != -&two {
                break t;
            }
        };
        let point = loop {
            let p = draw_scalar(&mut rng, height);
            let q = draw_scalar(&mut rng, height);
            if !commutant_form(&t, &p, &q).is_zero() {
                break ProjPoint::new(p, q).expect("form nonzero excludes (0,0)");
            }
        };
        coords.push(QPoint::new(t, point).expect("resampled until valid"));
    }
    Ok(FNCoords::new(coords))
}

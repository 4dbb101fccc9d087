//! Concrete nested pairs: generalized Reed–Solomon pairs and one-point AG
//! pairs on the rational line and on Hermitian curves.

use rand::Rng;

use crate::code::{LinearCode, NestedPair, ShareSet};
use crate::error::{Error, Result};
use crate::field::{prime_power, FieldElement, FieldRef, FiniteField};
use crate::linalg::{Matrix, Subspace, Vector};

/// Parameters of `GRS_{n,k}(α, v) = {(v₁h(α₁), …, v_n h(α_n)) : deg h ≤ k−1}`.
#[derive(Clone, Debug)]
pub struct GrsSpec {
    pub field: FieldRef,
    pub alpha: Vec<FieldElement>,
    pub multipliers: Vec<FieldElement>,
    pub k: usize,
}

impl GrsSpec {
    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        let q = self.field.order() as usize;
        if n == 0 || n > q - 1 {
            return Err(Error::InvalidSpec(format!("need 1 <= n <= q-1, got n = {n}, q = {q}")));
        }
        if self.multipliers.len() != n {
            return Err(Error::InvalidSpec("one multiplier per evaluation point".into()));
        }
        if self.k > n {
            return Err(Error::InvalidSpec(format!("k = {} exceeds n = {n}", self.k)));
        }
        for (i, a) in self.alpha.iter().enumerate() {
            self.field.elem(a.value())?;
            if a.is_zero() {
                return Err(Error::InvalidSpec(format!("evaluation point {} is zero", i + 1)));
            }
            if self.alpha[..i].contains(a) {
                return Err(Error::InvalidSpec(format!("evaluation point {} is repeated", i + 1)));
            }
        }
        if self.multipliers.iter().any(|v| v.is_zero()) {
            return Err(Error::InvalidSpec("column multipliers must be nonzero".into()));
        }
        Ok(())
    }

    /// Row `i` is `(v_j α_j^i)_j`, the image of the monomial `x^i`.
    fn monomial_row(&self, i: usize) -> Vector {
        let f = &self.field;
        self.alpha
            .iter()
            .zip(&self.multipliers)
            .map(|(&a, &v)| f.mul(v, f.pow(a, i as u64)))
            .collect()
    }
}

pub fn grs_code(spec: &GrsSpec) -> Result<LinearCode> {
    spec.validate()?;
    let rows: Vec<Vector> = (0..spec.k).map(|i| spec.monomial_row(i)).collect();
    let code = LinearCode::new(&spec.field, spec.n(), &rows)?;
    if code.dim() != spec.k {
        return Err(Error::InternalInconsistency("GRS generator lost rank".into()));
    }
    Ok(code)
}

fn field_points(field: &FieldRef, alpha: &[u32]) -> Result<Vec<FieldElement>> {
    alpha.iter().map(|&a| field.elem(a)).collect()
}

fn check_ramp_parameters(n: usize, k: usize, l: usize, alpha: &[u32]) -> Result<()> {
    if alpha.len() != n {
        return Err(Error::InvalidParameters(format!("{} evaluation points for n = {n}", alpha.len())));
    }
    if !(1 <= l && l <= k && k <= n) {
        return Err(Error::InvalidParameters(format!("need 1 <= L <= k <= n, got L = {l}, k = {k}, n = {n}")));
    }
    Ok(())
}

/// The conventional pair `C₁ = GRS_{n,k}(α, 1)`, `C₂ = GRS_{n,k−L}(α, α^L)`.
///
/// C₂ is the evaluation of `x^L h(x)` with `deg h < k−L`, so the secret
/// is carried by the monomials `1, x, …, x^{L−1}`.
pub fn ogawa_pair(q: u64, n: usize, k: usize, l: usize, alpha: &[u32]) -> Result<NestedPair> {
    check_ramp_parameters(n, k, l, alpha)?;
    let field = FiniteField::with_order(q)?;
    let alpha = field_points(&field, alpha)?;
    let ones = vec![FieldElement::ONE; n];
    let alpha_l: Vec<FieldElement> = alpha.iter().map(|&a| field.pow(a, l as u64)).collect();
    let c1_spec = GrsSpec {
        field: field.clone(),
        alpha: alpha.clone(),
        multipliers: ones.clone(),
        k,
    };
    let c1 = grs_code(&c1_spec)?;
    let c2 = grs_code(&GrsSpec {
        field: field.clone(),
        alpha,
        multipliers: alpha_l,
        k: k - l,
    })?;
    let reps = (0..l).map(|i| c1_spec.monomial_row(i)).collect();
    NestedPair::with_representatives(c1, c2, reps)
}

/// The pair `C₁ = GRS_{n,k}(α, 1)`, `C₂ = GRS_{n,k−L}(α, 1)` with the
/// secret on the top monomials `x^{k−L}, …, x^{k−1}`.
pub fn grs_monomial_pair(q: u64, n: usize, k: usize, l: usize, alpha: &[u32]) -> Result<NestedPair> {
    check_ramp_parameters(n, k, l, alpha)?;
    let field = FiniteField::with_order(q)?;
    let alpha = field_points(&field, alpha)?;
    let spec = |k| GrsSpec {
        field: field.clone(),
        alpha: alpha.clone(),
        multipliers: vec![FieldElement::ONE; n],
        k,
    };
    let c1_spec = spec(k);
    let c1 = grs_code(&c1_spec)?;
    let c2 = grs_code(&spec(k - l))?;
    let reps = (k - l..k).map(|i| c1_spec.monomial_row(i)).collect();
    NestedPair::with_representatives(c1, c2, reps)
}

/// q = 7, n = 5, L = 3, α = (3, 5, 6, 1, 4): C₂ is the repetition code and
/// `f(s₁, s₂, s₃)` is the coset of `(s₁α_j + s₂α_j² + s₃α_j³)_j`.
pub fn q7_sample_pair() -> NestedPair {
    grs_monomial_pair(7, 5, 4, 3, &[3, 5, 6, 1, 4]).expect("fixed valid parameters")
}

/// An affine rational point; `y` is zero on the rational line.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct AffinePoint {
    pub x: FieldElement,
    pub y: FieldElement,
}

/// `x^i y^j` with its pole order at the point at infinity.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub x_exp: u32,
    pub y_exp: u32,
    pub pole_order: usize,
}

/// Monomial basis of `L(m·Q∞)`, ascending in pole order.
#[derive(Clone, Debug)]
pub struct RiemannRochBasis {
    pub m: usize,
    pub monomials: Vec<Monomial>,
}

impl RiemannRochBasis {
    pub fn dim(&self) -> usize {
        self.monomials.len()
    }
}

/// A curve with a single rational place Q∞ at infinity and an explicit
/// monomial basis for every `L(m·Q∞)`.
pub trait OnePointCurve {
    fn field(&self) -> &FieldRef;
    fn genus(&self) -> usize;
    /// Affine rational points in lexicographic `(x, y)` order.
    fn points(&self) -> &[AffinePoint];
    fn riemann_roch_basis(&self, m: usize) -> RiemannRochBasis;
    fn kind(&self) -> CurveKind;

    fn evaluate(&self, mono: &Monomial, pt: &AffinePoint) -> FieldElement {
        let f = self.field();
        f.mul(f.pow(pt.x, mono.x_exp as u64), f.pow(pt.y, mono.y_exp as u64))
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum CurveKind {
    Rational,
    Hermitian { r: u32 },
}

/// The projective line over F_q; `L(m·Q∞)` is the polynomials of degree
/// at most m.
#[derive(Clone, Debug)]
pub struct RationalLine {
    field: FieldRef,
    points: Vec<AffinePoint>,
}

impl RationalLine {
    pub fn new(field: &FieldRef) -> Self {
        let points = field
            .elements()
            .map(|x| AffinePoint { x, y: FieldElement::ZERO })
            .collect();
        RationalLine {
            field: field.clone(),
            points,
        }
    }
}

impl OnePointCurve for RationalLine {
    fn field(&self) -> &FieldRef {
        &self.field
    }

    fn genus(&self) -> usize {
        0
    }

    fn points(&self) -> &[AffinePoint] {
        &self.points
    }

    fn riemann_roch_basis(&self, m: usize) -> RiemannRochBasis {
        RiemannRochBasis {
            m,
            monomials: (0..=m)
                .map(|i| Monomial {
                    x_exp: i as u32,
                    y_exp: 0,
                    pole_order: i,
                })
                .collect(),
        }
    }

    fn kind(&self) -> CurveKind {
        CurveKind::Rational
    }
}

/// `y^r + y = x^{r+1}` over F_{r²}: genus r(r−1)/2 and r³ affine points.
/// `x` has pole order r and `y` pole order r+1 at Q∞.
#[derive(Clone, Debug)]
pub struct HermitianCurve {
    field: FieldRef,
    r: u32,
    points: Vec<AffinePoint>,
}

impl HermitianCurve {
    pub fn new(r: u32) -> Result<Self> {
        let (p, e) = prime_power(r as u64).ok_or(Error::InvalidR(r))?;
        let field = FiniteField::new(p, 2 * e).map_err(|_| Error::InvalidR(r))?;
        let mut points = Vec::new();
        for x in field.elements() {
            let rhs = field.pow(x, r as u64 + 1);
            for y in field.elements() {
                if field.add(field.pow(y, r as u64), y) == rhs {
                    points.push(AffinePoint { x, y });
                }
            }
        }
        let curve = HermitianCurve { field, r, points };
        if curve.points.len() != (r as usize).pow(3) {
            return Err(Error::InternalInconsistency(format!(
                "Hermitian curve over F_{} has {} affine points",
                r * r,
                curve.points.len()
            )));
        }
        Ok(curve)
    }

    pub fn r(&self) -> u32 {
        self.r
    }
}

impl OnePointCurve for HermitianCurve {
    fn field(&self) -> &FieldRef {
        &self.field
    }

    fn genus(&self) -> usize {
        let r = self.r as usize;
        r * (r - 1) / 2
    }

    fn points(&self) -> &[AffinePoint] {
        &self.points
    }

    fn riemann_roch_basis(&self, m: usize) -> RiemannRochBasis {
        let r = self.r as usize;
        let mut monomials = Vec::new();
        for j in 0..r {
            let mut i = 0;
            while i * r + j * (r + 1) <= m {
                monomials.push(Monomial {
                    x_exp: i as u32,
                    y_exp: j as u32,
                    pole_order: i * r + j * (r + 1),
                });
                i += 1;
            }
        }
        monomials.sort_by_key(|mo| mo.pole_order);
        RiemannRochBasis { m, monomials }
    }

    fn kind(&self) -> CurveKind {
        CurveKind::Hermitian { r: self.r }
    }
}

fn check_points(curve: &dyn OnePointCurve, points: &[usize]) -> Result<()> {
    if points.is_empty() {
        return Err(Error::InvalidDivisor("no evaluation points".into()));
    }
    for (i, &p) in points.iter().enumerate() {
        if p >= curve.points().len() {
            return Err(Error::InvalidDivisor(format!("point index {p} out of range")));
        }
        if points[..i].contains(&p) {
            return Err(Error::InvalidDivisor(format!("point index {p} repeated")));
        }
    }
    Ok(())
}

/// Evaluation matrix: row i holds basis function i at each chosen point.
pub fn evaluation_matrix(curve: &dyn OnePointCurve, m: usize, points: &[usize]) -> Result<Matrix> {
    check_points(curve, points)?;
    let basis = curve.riemann_roch_basis(m);
    let rows: Vec<Vector> = basis
        .monomials
        .iter()
        .map(|mo| points.iter().map(|&p| curve.evaluate(mo, &curve.points()[p])).collect())
        .collect();
    Matrix::from_rows(curve.field(), points.len(), &rows)
}

/// `C(m·Q∞, P₁, …, P_n) = {(h(P₁), …, h(P_n)) : h ∈ L(m·Q∞)}`.
pub fn ag_functional_code(curve: &dyn OnePointCurve, m: usize, points: &[usize]) -> Result<LinearCode> {
    LinearCode::from_generator(&evaluation_matrix(curve, m, points)?)
}

/// The nested pair `C(m₁Q∞) ⊋ C(m₂Q∞)` with the secret on the monomials of
/// pole order above m₂, taken greedily while independent modulo C₂.
pub fn ag_pair(curve: &dyn OnePointCurve, m1: usize, m2: usize, points: &[usize]) -> Result<NestedPair> {
    if m1 <= m2 {
        return Err(Error::InvalidDivisor(format!("need m1 > m2, got m1 = {m1}, m2 = {m2}")));
    }
    let eval = evaluation_matrix(curve, m1, points)?;
    let c1 = LinearCode::from_generator(&eval)?;
    let c2 = ag_functional_code(curve, m2, points)?;
    if c1.dim() == c2.dim() {
        return Err(Error::EqualCodes);
    }
    let n = points.len();
    let l2 = curve.riemann_roch_basis(m2).dim();
    let mut span = c2.space().clone();
    let mut reps = Vec::new();
    for i in l2..eval.rows() {
        let row = eval.row(i).to_vec();
        if !span.contains(&row) {
            span = span.sum(&Subspace::span(curve.field(), n, std::slice::from_ref(&row))?)?;
            reps.push(row);
        }
    }
    NestedPair::with_representatives(c1, c2, reps)
}

/// Smallest |J| guaranteed qualified (with forbidden complement):
/// `max{1 + m₁, n − (m₂ − 2g + 1)}`.
pub fn theorem2_threshold(genus: usize, m1: usize, m2: usize, n: usize) -> i64 {
    let a = 1 + m1 as i64;
    let b = n as i64 - (m2 as i64 - 2 * genus as i64 + 1);
    a.max(b)
}

/// Lower bound `m₁ − m₂ − g` on the secret dimension.
pub fn secret_dim_lower_bound(genus: usize, m1: usize, m2: usize) -> i64 {
    m1 as i64 - m2 as i64 - genus as i64
}

/// Reconstructible qudits for J counted in function space:
///
/// ```text
/// dim X − dim(X ∩ Y),  X = L(G₁ − Σ_{J̄} P) + L(G₂),  Y = L(G₁ − Σ_J P) + L(G₂)
/// ```
///
/// where `L(G₁ − Σ_A P)` is the kernel of evaluation at the points of A
/// inside L(G₁). Requires `m₁ < n`.
pub fn theorem3_qudits(
    curve: &dyn OnePointCurve,
    m1: usize,
    m2: usize,
    points: &[usize],
    j: &ShareSet,
) -> Result<usize> {
    let n = points.len();
    if m1 >= n {
        return Err(Error::DegreeTooLarge { m1, n });
    }
    if j.n() != n {
        return Err(Error::DimensionMismatch { expected: n, got: j.n() });
    }
    if m1 <= m2 {
        return Err(Error::InvalidDivisor(format!("need m1 > m2, got m1 = {m1}, m2 = {m2}")));
    }
    let f = curve.field();
    let eval = evaluation_matrix(curve, m1, points)?;
    let l1 = eval.rows();
    let l2 = curve.riemann_roch_basis(m2).dim();
    let lg2 = Subspace::span(f, l1, &(0..l2).map(|i| crate::linalg::unit(l1, i)).collect::<Vec<_>>())?;
    let vanishing = |a: &ShareSet| eval.select_columns(&a.members()).transpose().kernel_basis();
    let x = vanishing(&j.complement()).sum(&lg2)?;
    let y = vanishing(j).sum(&lg2)?;
    Ok(x.dim() - x.intersect(&y)?.dim())
}

/// A random nested pair with `dim C₁ = k1 > dim C₂ = k2`.
pub fn random_nested_pair<R: Rng + ?Sized>(
    rng: &mut R,
    field: &FieldRef,
    n: usize,
    k1: usize,
    k2: usize,
) -> Result<NestedPair> {
    if !(k2 < k1 && k1 <= n) {
        return Err(Error::InvalidParameters(format!("need k2 < k1 <= n, got {k2}, {k1}, {n}")));
    }
    let q = field.order();
    loop {
        let rows: Vec<Vector> = (0..k1)
            .map(|_| (0..n).map(|_| field.elem_unchecked(rng.random_range(0..q))).collect())
            .collect();
        let c1 = LinearCode::new(field, n, &rows)?;
        if c1.dim() != k1 {
            continue;
        }
        let basis = c1.space().basis_vectors();
        let sub: Vec<Vector> = (0..k2)
            .map(|_| {
                let coeffs: Vector = (0..k1).map(|_| field.elem_unchecked(rng.random_range(0..q))).collect();
                c1.space().combine(&coeffs)
            })
            .collect();
        let c2 = LinearCode::new(field, n, &sub)?;
        if c2.dim() != k2 {
            continue;
        }
        debug_assert!(basis.len() == k1);
        return NestedPair::new(c1, c2);
    }
}

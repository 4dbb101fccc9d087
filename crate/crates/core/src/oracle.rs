//! State-level simulation of the encoding, used as ground truth for the
//! closed-form quantities.
//!
//! Amplitude index convention: qudit 1 is the most significant base-q digit.
//! Density matrices are stored sparsely and diagonalized block by block, the
//! blocks being the connected components of the nonzero pattern.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::access;
use crate::code::{NestedPair, ShareSet};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldRef};
use crate::linalg::{Matrix, OrderedBasis, Subspace, Vector};

pub const TOLERANCE: f64 = 1e-9;
pub const EIGEN_CLAMP: f64 = 1e-12;
/// Largest number of amplitudes a state vector may hold.
pub const MAX_STATE_DIM: usize = 1 << 22;
/// Largest diagonalized block of a density matrix.
pub const MAX_BLOCK_DIM: usize = 2048;
/// Largest number of basis secrets in a brute-force ensemble.
pub const MAX_ENSEMBLE: usize = 10_000;

fn checked_dim(q: u32, t: usize) -> Result<usize> {
    let mut d: usize = 1;
    for _ in 0..t {
        d = d
            .checked_mul(q as usize)
            .filter(|&d| d <= MAX_STATE_DIM)
            .ok_or_else(|| Error::InstanceTooLarge(format!("{q}^{t} amplitudes")))?;
    }
    Ok(d)
}

fn index_of(q: u32, digits: impl Iterator<Item = u32>) -> usize {
    digits.fold(0usize, |acc, d| acc * q as usize + d as usize)
}

fn digits_of(q: u32, t: usize, mut index: usize) -> Vec<u32> {
    let mut out = vec![0; t];
    for slot in out.iter_mut().rev() {
        *slot = (index % q as usize) as u32;
        index /= q as usize;
    }
    out
}

/// Splits a t-qudit index into the index over `keep` and the index over the
/// remaining qudits, both most-significant-first.
#[derive(Clone, Debug)]
struct Splitter {
    q: u32,
    t: usize,
    keep: Vec<bool>,
}

impl Splitter {
    fn new(q: u32, keep: &ShareSet) -> Self {
        Splitter {
            q,
            t: keep.n(),
            keep: (0..keep.n()).map(|i| keep.contains(i)).collect(),
        }
    }

    fn split(&self, index: usize) -> (usize, usize) {
        let digits = digits_of(self.q, self.t, index);
        let (mut k, mut r) = (0usize, 0usize);
        for (d, &kept) in digits.iter().zip(&self.keep) {
            if kept {
                k = k * self.q as usize + *d as usize;
            } else {
                r = r * self.q as usize + *d as usize;
            }
        }
        (k, r)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    q: u32,
    t: usize,
    amplitudes: Vec<Complex64>,
}

/// On-disk form: `{"q", "t", "amplitudes": [[re, im], ...]}` in index order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StateFile {
    pub q: u32,
    pub t: usize,
    pub amplitudes: Vec<[f64; 2]>,
}

impl StateVector {
    pub fn new(q: u32, t: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        let dim = checked_dim(q, t)?;
        if amplitudes.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: amplitudes.len(),
            });
        }
        let s = StateVector { q, t, amplitudes };
        if (s.norm_sqr() - 1.0).abs() > TOLERANCE {
            return Err(Error::NotADensityMatrix(format!("state has norm² {}", s.norm_sqr())));
        }
        Ok(s)
    }

    pub fn basis(q: u32, t: usize, index: usize) -> Result<Self> {
        let dim = checked_dim(q, t)?;
        if index >= dim {
            return Err(Error::IndexOutOfRange { index, n: dim });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { q, t, amplitudes })
    }

    /// Basis state with the given digit labels.
    pub fn basis_labels(q: u32, labels: &[FieldElement]) -> Result<Self> {
        Self::basis(q, labels.len(), index_of(q, labels.iter().map(|x| x.value())))
    }

    /// A Haar-random pure state.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, q: u32, t: usize) -> Result<Self> {
        let dim = checked_dim(q, t)?;
        let mut amplitudes: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        amplitudes.iter_mut().for_each(|a| *a /= norm);
        Ok(StateVector { q, t, amplitudes })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn qudits(&self) -> usize {
        self.t
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm_sqr() > 0.0)
            .map(|(i, &a)| (i, a))
    }

    /// Digit labels of a basis index.
    pub fn labels(&self, index: usize) -> Vec<u32> {
        digits_of(self.q, self.t, index)
    }

    /// `|ψ⟩ ⊗ |φ⟩`.
    pub fn tensor(&self, other: &StateVector) -> Result<StateVector> {
        if self.q != other.q {
            return Err(Error::FieldMismatch);
        }
        let t = self.t + other.t;
        checked_dim(self.q, t)?;
        let mut amplitudes = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                amplitudes.push(a * b);
            }
        }
        Ok(StateVector { q: self.q, t, amplitudes })
    }

    pub fn to_file(&self) -> StateFile {
        StateFile {
            q: self.q,
            t: self.t,
            amplitudes: self.amplitudes.iter().map(|a| [a.re, a.im]).collect(),
        }
    }

    pub fn from_file(file: &StateFile) -> Result<Self> {
        let amps = file.amplitudes.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
        StateVector::new(file.q, file.t, amps)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_file())?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_file(&serde_json::from_str(text)?)
    }

    pub fn density(&self) -> DensityMatrix {
        let mut entries = BTreeMap::new();
        let nz: Vec<_> = self.nonzero().collect();
        for &(i, a) in &nz {
            for &(j, b) in &nz {
                entries.insert((i, j), a * b.conj());
            }
        }
        DensityMatrix {
            q: self.q,
            t: self.t,
            entries,
        }
    }
}

/// Partial trace of a pure state given by its nonzero amplitudes.
fn reduce_pure(q: u32, t: usize, support: &[(usize, Complex64)], keep: &ShareSet) -> DensityMatrix {
    let splitter = Splitter::new(q, keep);
    let mut groups: BTreeMap<usize, Vec<(usize, Complex64)>> = BTreeMap::new();
    for &(idx, amp) in support {
        let (k, r) = splitter.split(idx);
        groups.entry(r).or_default().push((k, amp));
    }
    let mut entries: BTreeMap<(usize, usize), Complex64> = BTreeMap::new();
    for members in groups.values() {
        for &(a, x) in members {
            for &(b, y) in members {
                *entries.entry((a, b)).or_default() += x * y.conj();
            }
        }
    }
    debug_assert!(t >= keep.len());
    DensityMatrix {
        q,
        t: keep.len(),
        entries,
    }
}

pub fn partial_trace_state(state: &StateVector, keep: &ShareSet) -> Result<DensityMatrix> {
    check_keep(state.t, keep)?;
    let support: Vec<_> = state.nonzero().collect();
    Ok(reduce_pure(state.q, state.t, &support, keep))
}

fn check_keep(t: usize, keep: &ShareSet) -> Result<()> {
    if keep.n() != t {
        return Err(Error::DimensionMismatch { expected: t, got: keep.n() });
    }
    if keep.is_empty() {
        return Err(Error::EmptySubset);
    }
    Ok(())
}

/// Sparse Hermitian matrix on `q^t` dimensions.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    q: u32,
    t: usize,
    entries: BTreeMap<(usize, usize), Complex64>,
}

impl DensityMatrix {
    pub fn from_entries(q: u32, t: usize, entries: BTreeMap<(usize, usize), Complex64>) -> Result<Self> {
        let dim = checked_dim(q, t)?;
        if let Some(&(i, j)) = entries.keys().find(|(i, j)| *i >= dim || *j >= dim) {
            return Err(Error::IndexOutOfRange { index: i.max(j), n: dim });
        }
        Ok(DensityMatrix { q, t, entries })
    }

    /// `I / q^t`.
    pub fn maximally_mixed(q: u32, t: usize) -> Result<Self> {
        let dim = checked_dim(q, t)?;
        let w = Complex64::new(1.0 / dim as f64, 0.0);
        Ok(DensityMatrix {
            q,
            t,
            entries: (0..dim).map(|i| ((i, i), w)).collect(),
        })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn qudits(&self) -> usize {
        self.t
    }

    pub fn dim(&self) -> usize {
        (self.q as usize).pow(self.t as u32)
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries.get(&(i, j)).copied().unwrap_or_default()
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), Complex64> {
        &self.entries
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.iter().filter(|((i, j), _)| i == j).map(|(_, v)| *v).sum()
    }

    pub fn scale(&mut self, factor: f64) {
        self.entries.values_mut().for_each(|v| *v *= factor);
    }

    pub fn add_assign(&mut self, other: &DensityMatrix) -> Result<()> {
        if (self.q, self.t) != (other.q, other.t) {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        for (k, v) in &other.entries {
            *self.entries.entry(*k).or_default() += v;
        }
        Ok(())
    }

    /// Largest entrywise difference.
    pub fn distance(&self, other: &DensityMatrix) -> f64 {
        let mut d: f64 = 0.0;
        for (k, v) in &self.entries {
            d = d.max((v - other.entries.get(k).copied().unwrap_or_default()).norm());
        }
        for (k, v) in &other.entries {
            if !self.entries.contains_key(k) {
                d = d.max(v.norm());
            }
        }
        d
    }

    /// `⟨ψ|ρ|ψ⟩`.
    pub fn expectation(&self, psi: &StateVector) -> Result<f64> {
        if psi.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: psi.dim(),
            });
        }
        let a = psi.amplitudes();
        let v: Complex64 = self.entries.iter().map(|(&(i, j), &x)| a[i].conj() * x * a[j]).sum();
        Ok(v.re)
    }

    pub fn partial_trace(&self, keep: &ShareSet) -> Result<DensityMatrix> {
        check_keep(self.t, keep)?;
        let splitter = Splitter::new(self.q, keep);
        let mut entries: BTreeMap<(usize, usize), Complex64> = BTreeMap::new();
        for (&(i, j), &v) in &self.entries {
            let (ki, ri) = splitter.split(i);
            let (kj, rj) = splitter.split(j);
            if ri == rj {
                *entries.entry((ki, kj)).or_default() += v;
            }
        }
        Ok(DensityMatrix {
            q: self.q,
            t: keep.len(),
            entries,
        })
    }

    /// Connected components of the nonzero pattern, each sorted ascending.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
        fn find(parent: &mut BTreeMap<usize, usize>, x: usize) -> usize {
            let p = *parent.entry(x).or_insert(x);
            if p == x {
                return x;
            }
            let root = find(parent, p);
            parent.insert(x, root);
            root
        }
        for (&(i, j), v) in &self.entries {
            if v.norm() == 0.0 {
                continue;
            }
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent.insert(a.max(b), a.min(b));
            }
        }
        let keys: Vec<usize> = parent.keys().copied().collect();
        let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for k in keys {
            let root = find(&mut parent, k);
            comps.entry(root).or_default().push(k);
        }
        comps.into_values().collect()
    }

    /// All eigenvalues of the nonzero blocks; the remaining ones are zero.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let mut out = Vec::new();
        for block in self.blocks() {
            if block.len() > MAX_BLOCK_DIM {
                return Err(Error::InstanceTooLarge(format!(
                    "density matrix block of size {} exceeds {MAX_BLOCK_DIM}",
                    block.len()
                )));
            }
            if block.len() == 1 {
                out.push(self.get(block[0], block[0]).re);
                continue;
            }
            let m = DMatrix::from_fn(block.len(), block.len(), |r, c| self.get(block[r], block[c]));
            out.extend(m.symmetric_eigenvalues().iter().copied());
        }
        Ok(out)
    }

    /// Checks Hermiticity, unit trace and positivity within [`TOLERANCE`].
    pub fn validate(&self) -> Result<Vec<f64>> {
        for (&(i, j), v) in &self.entries {
            if (v - self.get(j, i).conj()).norm() > TOLERANCE {
                return Err(Error::NotADensityMatrix(format!("not Hermitian at ({i}, {j})")));
            }
        }
        let tr = self.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > TOLERANCE {
            return Err(Error::NotADensityMatrix(format!("trace {tr}")));
        }
        let eig = self.eigenvalues()?;
        if let Some(l) = eig.iter().find(|&&l| l < -TOLERANCE) {
            return Err(Error::NotADensityMatrix(format!("negative eigenvalue {l}")));
        }
        Ok(eig)
    }
}

/// `−Σ λ log_q λ`, with eigenvalues below [`EIGEN_CLAMP`] treated as zero.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let eig = rho.validate()?;
    let ln_q = (rho.q as f64).ln();
    Ok(-eig
        .iter()
        .filter(|&&l| l >= EIGEN_CLAMP)
        .map(|&l| l * l.ln() / ln_q)
        .sum::<f64>())
}

fn pair_q(pair: &NestedPair) -> u32 {
    pair.field().order()
}

fn labels_index(q: u32, x: &[FieldElement]) -> usize {
    index_of(q, x.iter().map(|e| e.value()))
}

fn check_ensemble_size(pair: &NestedPair) -> Result<usize> {
    let q = pair_q(pair) as usize;
    let mut count: usize = 1;
    for _ in 0..pair.secret_dim() {
        count = count
            .checked_mul(q)
            .filter(|&c| c <= MAX_ENSEMBLE)
            .ok_or_else(|| Error::InstanceTooLarge(format!("more than {MAX_ENSEMBLE} basis secrets")))?;
    }
    Ok(count)
}

fn secret_labels(field: &FieldRef, l: usize, index: usize) -> Vector {
    digits_of(field.order(), l, index)
        .into_iter()
        .map(|d| field.elem_unchecked(d))
        .collect()
}

/// `|s⟩ ↦ |C₂|^{-1/2} Σ_{x ∈ f(s)} |x⟩`, extended linearly.
pub fn encode(pair: &NestedPair, secret: &StateVector) -> Result<StateVector> {
    let q = pair_q(pair);
    if secret.q != q || secret.t != pair.secret_dim() {
        return Err(Error::DimensionMismatch {
            expected: pair.secret_dim(),
            got: secret.t,
        });
    }
    let dim = checked_dim(q, pair.n())?;
    let c2 = pair.c2().space().elements();
    let amp = 1.0 / (c2.len() as f64).sqrt();
    let f = pair.field();
    let mut out = vec![Complex64::new(0.0, 0.0); dim];
    for (s, a) in secret.nonzero() {
        let rep = pair.representative(&secret_labels(f, pair.secret_dim(), s));
        for c in &c2 {
            let x: Vector = rep.iter().zip(c).map(|(&r, &y)| f.add(r, y)).collect();
            out[labels_index(q, &x)] += a * amp;
        }
    }
    Ok(StateVector {
        q,
        t: pair.n(),
        amplitudes: out,
    })
}

/// Encodings of every basis secret, kept as sparse supports so that many
/// subsets can be analysed without re-encoding.
#[derive(Clone, Debug)]
pub struct Ensemble {
    q: u32,
    n: usize,
    amplitude: f64,
    supports: Vec<Vec<usize>>,
}

impl Ensemble {
    pub fn new(pair: &NestedPair) -> Result<Self> {
        let count = check_ensemble_size(pair)?;
        let q = pair_q(pair);
        checked_dim(q, pair.n())?;
        let f = pair.field();
        let c2 = pair.c2().space().elements();
        let supports = (0..count)
            .map(|s| {
                let rep = pair.representative(&secret_labels(f, pair.secret_dim(), s));
                let mut support: Vec<usize> = c2
                    .iter()
                    .map(|c| {
                        let x: Vector = rep.iter().zip(c).map(|(&r, &y)| f.add(r, y)).collect();
                        labels_index(q, &x)
                    })
                    .collect();
                support.sort_unstable();
                support
            })
            .collect();
        Ok(Ensemble {
            q,
            n: pair.n(),
            amplitude: 1.0 / (c2.len() as f64).sqrt(),
            supports,
        })
    }

    pub fn len(&self) -> usize {
        self.supports.len()
    }

    pub fn is_empty(&self) -> bool {
        self.supports.is_empty()
    }

    /// `Γ_J(|s⟩⟨s|)` for the basis secret with index s.
    pub fn reduced(&self, s: usize, j: &ShareSet) -> Result<DensityMatrix> {
        check_keep(self.n, j)?;
        let a = Complex64::new(self.amplitude, 0.0);
        let support: Vec<_> = self.supports[s].iter().map(|&i| (i, a)).collect();
        Ok(reduce_pure(self.q, self.n, &support, j))
    }

    /// Average of `Γ_J(|s⟩⟨s|)` over all basis secrets, which is also
    /// `Γ_J` of the completely mixed secret.
    pub fn mixture(&self, j: &ShareSet) -> Result<DensityMatrix> {
        check_keep(self.n, j)?;
        let mut acc = DensityMatrix {
            q: self.q,
            t: j.len(),
            entries: BTreeMap::new(),
        };
        for s in 0..self.len() {
            acc.add_assign(&self.reduced(s, j)?)?;
        }
        acc.scale(1.0 / self.len() as f64);
        Ok(acc)
    }

    fn mixture_entropy(&self, j: &ShareSet) -> Result<f64> {
        if j.is_empty() {
            return Ok(0.0);
        }
        von_neumann_entropy(&self.mixture(j)?)
    }

    /// Entropy of each `Γ_J(|s⟩⟨s|)`, in secret index order.
    pub fn single_entropies(&self, j: &ShareSet) -> Result<Vec<f64>> {
        if j.is_empty() {
            return Ok(vec![0.0; self.len()]);
        }
        (0..self.len()).map(|s| von_neumann_entropy(&self.reduced(s, j)?)).collect()
    }

    pub fn holevo(&self, j: &ShareSet) -> Result<f64> {
        let singles = self.single_entropies(j)?;
        let avg = singles.iter().sum::<f64>() / singles.len() as f64;
        Ok(self.mixture_entropy(j)? - avg)
    }

    /// `H(Γ_J(ρ)) − H(Γ_{J̄}(ρ))` for the completely mixed secret ρ.
    pub fn coherent(&self, j: &ShareSet) -> Result<f64> {
        Ok(self.mixture_entropy(j)? - self.mixture_entropy(&j.complement())?)
    }

    /// Whether `Γ_J(|s⟩⟨s|)` is the same matrix for every basis secret.
    pub fn state_independent(&self, j: &ShareSet, tol: f64) -> Result<bool> {
        if j.is_empty() {
            return Ok(true);
        }
        let first = self.reduced(0, j)?;
        for s in 1..self.len() {
            if self.reduced(s, j)?.distance(&first) > tol {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn holevo_bruteforce(pair: &NestedPair, j: &ShareSet) -> Result<f64> {
    Ensemble::new(pair)?.holevo(j)
}

pub fn coherent_bruteforce(pair: &NestedPair, j: &ShareSet) -> Result<f64> {
    Ensemble::new(pair)?.coherent(j)
}

/// Ordered bases of the secret decomposition `F_q^L = V ⊕ W ⊕ K` used by a
/// decoder. V ⊆ ker(P̃_{J̄}) meets K = ker(P̃_J) trivially and has dimension
/// equal to the number of reconstructible qudits.
#[derive(Clone, Debug)]
pub struct DecoderBasis {
    pub v: Vec<Vector>,
    pub w: Vec<Vector>,
    pub k: Vec<Vector>,
}

impl DecoderBasis {
    pub fn canonical(pair: &NestedPair, j: &ShareSet) -> Self {
        let d = access::decompose_secret(pair, j);
        DecoderBasis {
            v: d.v.basis_vectors(),
            w: d.w.basis_vectors(),
            k: d.k.basis_vectors(),
        }
    }

    fn all(&self) -> Vec<Vector> {
        self.v.iter().chain(&self.w).chain(&self.k).cloned().collect()
    }

    fn validate(&self, pair: &NestedPair, j: &ShareSet) -> Result<()> {
        let f = pair.field();
        let l = pair.secret_dim();
        let kern = access::quotient_kernels(pair, j);
        let span = |vs: &[Vector]| Subspace::span(f, l, vs);
        let v = span(&self.v)?;
        let k = span(&self.k)?;
        let bad = |m: &str| Err(Error::InvalidParameters(format!("decoder basis: {m}")));
        if v.dim() != self.v.len() || v.dim() != access::reconstructible_qudits(pair, j) {
            return bad("V has the wrong dimension");
        }
        if !v.is_subspace_of(&kern.ker_complement) || !v.intersect(&kern.ker_j)?.is_zero() {
            return bad("V must lie in ker(P̃_J̄) and meet ker(P̃_J) trivially");
        }
        if k != kern.ker_j || k.dim() != self.k.len() {
            return bad("K must be a basis of ker(P̃_J)");
        }
        if span(&self.all())?.dim() != l || self.all().len() != l {
            return bad("V, W, K must together form a basis");
        }
        Ok(())
    }
}

/// Local permutation unitary on the qudits of J. A label `v ∈ F_q^{|J|}`
/// is sent to its coordinates in the ordered basis
/// `[Y_V; Y_W; S; T; Z]`, where
///
/// * `Y_V`: `P_J(z_i)` for lifts `z_i ∈ f(v_i)` vanishing on J̄,
/// * `Y_W`: `P_J(f(w_i))` images of the W basis,
/// * `S`: a basis of `P_J(C₂ ∩ ker P_{J̄})`,
/// * `T`: a complement of S in `P_J(C₂)`,
/// * `Z`: a complement of `P_J(C₁)` in `F_q^{|J|}`.
///
/// On `P_J(C₁)` the output registers are `(g₁, g₂, g₃, 0)` with
/// `g₁ = (s_V, s_W)`.
#[derive(Clone, Debug)]
pub struct DecoderCircuit {
    j: ShareSet,
    field: FieldRef,
    basis: DecoderBasis,
    /// rows `Y_V, Y_W, S, T, Z`
    target: Matrix,
    inverse: Matrix,
    dims: [usize; 5],
}

pub fn build_decoder(pair: &NestedPair, j: &ShareSet) -> Result<DecoderCircuit> {
    build_decoder_with(pair, j, DecoderBasis::canonical(pair, j))
}

pub fn build_decoder_with(pair: &NestedPair, j: &ShareSet, basis: DecoderBasis) -> Result<DecoderCircuit> {
    if j.n() != pair.n() {
        return Err(Error::DimensionMismatch { expected: pair.n(), got: j.n() });
    }
    if j.is_empty() {
        return Err(Error::EmptySubset);
    }
    if access::reconstructible_qudits(pair, j) == 0 {
        return Err(Error::NothingToReconstruct);
    }
    basis.validate(pair, j)?;
    let f = pair.field();
    let jm = j.members();
    let jc = j.complement();
    let width = jm.len();
    let proj = |x: &Vector| -> Vector { jm.iter().map(|&i| x[i]).collect() };

    let c2_gen = pair.c2().generator().clone();
    let c2_off_j = c2_gen.select_columns(&jc.members());
    let mut y_v = Vec::new();
    for v in &basis.v {
        let rep = pair.representative(v);
        let z = if jc.is_empty() {
            rep
        } else {
            let target: Vector = jc.members().iter().map(|&i| f.neg(rep[i])).collect();
            let a = c2_off_j
                .solve_left(&target)
                .ok_or_else(|| Error::InternalInconsistency("V vector has no lift vanishing off J".into()))?;
            let c = if a.is_empty() { vec![FieldElement::ZERO; pair.n()] } else { c2_gen.apply_row(&a) };
            rep.iter().zip(&c).map(|(&x, &y)| f.add(x, y)).collect()
        };
        y_v.push(proj(&z));
    }
    let y_w: Vec<Vector> = basis.w.iter().map(|w| proj(&pair.representative(w))).collect();

    let pc1 = pair.c1().space().project(&jm);
    let pc2 = pair.c2().space().project(&jm);
    let s_space = pair.c2().vanishing_on(&jc).space().project(&jm);
    let t_space = s_space.complement_in(&pc2)?;
    let z_space = pc1.complement();

    let rows: Vec<Vector> = y_v
        .iter()
        .chain(&y_w)
        .cloned()
        .chain(s_space.basis_vectors())
        .chain(t_space.basis_vectors())
        .chain(z_space.basis_vectors())
        .collect();
    let dims = [y_v.len(), y_w.len(), s_space.dim(), t_space.dim(), z_space.dim()];
    if rows.len() != width {
        return Err(Error::InternalInconsistency(format!(
            "decoder target basis has {} vectors for {width} qudits",
            rows.len()
        )));
    }
    let target = Matrix::from_rows(f, width, &rows)?;
    let inverse = target
        .inverse()
        .map_err(|_| Error::InternalInconsistency("decoder target basis is singular".into()))?;
    Ok(DecoderCircuit {
        j: j.clone(),
        field: f.clone(),
        basis,
        target,
        inverse,
        dims,
    })
}

impl DecoderCircuit {
    pub fn j(&self) -> &ShareSet {
        &self.j
    }

    pub fn basis(&self) -> &DecoderBasis {
        &self.basis
    }

    /// `(dim V, dim W, dim S, dim T, dim Z)`.
    pub fn dims(&self) -> [usize; 5] {
        self.dims
    }

    pub fn reconstructed_qudits(&self) -> usize {
        self.dims[0]
    }

    /// Output labels for input labels on the qudits of J (ascending order).
    pub fn label(&self, v: &[FieldElement]) -> Vector {
        self.inverse.apply_row(v)
    }

    pub fn unlabel(&self, c: &[FieldElement]) -> Vector {
        self.target.apply_row(c)
    }

    fn range(&self, from: usize, to: usize) -> std::ops::Range<usize> {
        let start: usize = self.dims[..from].iter().sum();
        let end: usize = self.dims[..to].iter().sum();
        start..end
    }

    /// `(s_V, s_W)` coordinates read from `P_J(x)`.
    pub fn g1(&self, v: &[FieldElement]) -> Vector {
        self.label(v)[self.range(0, 2)].to_vec()
    }

    /// `P_J(C₂ ∩ ker P_{J̄})` component.
    pub fn g2(&self, v: &[FieldElement]) -> Vector {
        self.label(v)[self.range(2, 3)].to_vec()
    }

    /// Remaining `P_J(C₂)` component.
    pub fn g3(&self, v: &[FieldElement]) -> Vector {
        self.label(v)[self.range(3, 4)].to_vec()
    }

    /// Exhaustively checks that the label map is a bijection.
    pub fn is_bijective(&self) -> Result<bool> {
        let q = self.field.order();
        let width = self.j.len();
        let count = checked_dim(q, width)?;
        let mut seen = vec![false; count];
        for idx in 0..count {
            let v: Vector = digits_of(q, width, idx).into_iter().map(|d| self.field.elem_unchecked(d)).collect();
            let out = labels_index(q, &self.label(&v));
            if std::mem::replace(&mut seen[out], true) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Applies the permutation to the J qudits; J̄ is untouched.
    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        let q = self.field.order();
        if state.q != q || state.t != self.j.n() {
            return Err(Error::DimensionMismatch {
                expected: self.j.n(),
                got: state.t,
            });
        }
        let members = self.j.members();
        let mut out = vec![Complex64::new(0.0, 0.0); state.dim()];
        for (idx, a) in state.nonzero() {
            let mut digits = digits_of(q, state.t, idx);
            let v: Vector = members.iter().map(|&i| self.field.elem_unchecked(digits[i])).collect();
            for (&i, y) in members.iter().zip(self.label(&v)) {
                digits[i] = y.value();
            }
            out[index_of(q, digits.into_iter())] = a;
        }
        Ok(StateVector {
            q,
            t: state.t,
            amplitudes: out,
        })
    }

    /// Secret with amplitude `β(c) γ(w, k)` on `s = Σ c_i v_i + Σ w_i w_i + Σ k_i κ_i`.
    pub fn product_secret(&self, beta: &StateVector, gamma: &StateVector) -> Result<StateVector> {
        let q = self.field.order();
        let dv = self.basis.v.len();
        let rest = self.basis.w.len() + self.basis.k.len();
        if beta.t != dv || gamma.t != rest || beta.q != q || gamma.q != q {
            return Err(Error::DimensionMismatch {
                expected: dv,
                got: beta.t,
            });
        }
        let all = self.basis.all();
        let l = all.len();
        let ordered = OrderedBasis::new(&self.field, l, &all)?;
        let mut out = vec![Complex64::new(0.0, 0.0); checked_dim(q, l)?];
        for (ci, b) in beta.nonzero() {
            for (ri, g) in gamma.nonzero() {
                let coeffs: Vector = digits_of(q, dv, ci)
                    .into_iter()
                    .chain(digits_of(q, rest, ri))
                    .map(|d| self.field.elem_unchecked(d))
                    .collect();
                let s = ordered.vectors().apply_row(&coeffs);
                out[labels_index(q, &s)] = b * g;
            }
        }
        StateVector::new(q, l, out)
    }

    /// Coordinates `(s_V, s_W, s_K)` of a secret.
    pub fn secret_coordinates(&self, s: &[FieldElement]) -> Result<Vector> {
        let all = self.basis.all();
        OrderedBasis::new(&self.field, all.len(), &all)?
            .coordinates(s)
            .ok_or(Error::DimensionMismatch {
                expected: all.len(),
                got: s.len(),
            })
    }

    /// The qudits carrying the reconstructed part: the first dim V members of J.
    pub fn output_qudits(&self) -> ShareSet {
        let members: Vec<usize> = self.j.members().into_iter().take(self.dims[0]).map(|i| i + 1).collect();
        ShareSet::from_indices(self.j.n(), &members).expect("members of J")
    }
}

#[derive(Clone, Debug)]
pub struct Decoded {
    pub reconstructed: DensityMatrix,
    pub state: StateVector,
}

pub fn decode(pair: &NestedPair, j: &ShareSet, encoded: &StateVector) -> Result<Decoded> {
    decode_with(&build_decoder(pair, j)?, encoded)
}

pub fn decode_with(circuit: &DecoderCircuit, encoded: &StateVector) -> Result<Decoded> {
    let state = circuit.apply(encoded)?;
    let reconstructed = partial_trace_state(&state, &circuit.output_qudits())?;
    Ok(Decoded { reconstructed, state })
}

/// `⟨ψ|ρ|ψ⟩`.
pub fn fidelity(rho: &DensityMatrix, psi: &StateVector) -> Result<f64> {
    rho.expectation(psi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::q7_sample_pair;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn index_convention() {
        assert_eq!(digits_of(7, 3, 7 * 7 * 2 + 5), vec![2, 0, 5]);
        assert_eq!(index_of(7, [2, 0, 5].into_iter()), 103);
        let sp = Splitter::new(3, &ShareSet::from_indices(3, &[1, 3]).unwrap());
        // digits (1, 2, 0): kept (1, 0), traced (2)
        assert_eq!(sp.split(9 + 6), (3, 2));
    }

    #[test]
    fn entropy_of_simple_states() {
        let pure = StateVector::basis(3, 2, 4).unwrap().density();
        assert!(von_neumann_entropy(&pure).unwrap().abs() < 1e-12);
        let mixed = DensityMatrix::maximally_mixed(5, 1).unwrap();
        assert!((von_neumann_entropy(&mixed).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_invalid_density() {
        let mut e = BTreeMap::new();
        e.insert((0, 0), c(0.5));
        let rho = DensityMatrix::from_entries(2, 1, e.clone()).unwrap();
        assert!(matches!(von_neumann_entropy(&rho), Err(Error::NotADensityMatrix(_))));
        e.insert((1, 1), c(0.5));
        e.insert((0, 1), Complex64::new(0.0, 0.3));
        let rho = DensityMatrix::from_entries(2, 1, e).unwrap();
        assert!(matches!(von_neumann_entropy(&rho), Err(Error::NotADensityMatrix(_))));
    }

    #[test]
    fn maximally_entangled_marginal() {
        let q = 3;
        let amps: Vec<Complex64> = (0..9)
            .map(|i| if i / 3 == i % 3 { c(1.0 / 3f64.sqrt()) } else { c(0.0) })
            .collect();
        let psi = StateVector::new(q, 2, amps).unwrap();
        let rho = partial_trace_state(&psi, &ShareSet::from_indices(2, &[2]).unwrap()).unwrap();
        assert!(rho.distance(&DensityMatrix::maximally_mixed(3, 1).unwrap()) < 1e-12);
        let whole = partial_trace_state(&psi, &ShareSet::all(2)).unwrap();
        assert!(whole.distance(&psi.density()) < 1e-12);
        assert!(matches!(partial_trace_state(&psi, &ShareSet::empty(2)), Err(Error::EmptySubset)));
        // tracing a density matrix agrees with tracing the state
        let via_rho = psi.density().partial_trace(&ShareSet::from_indices(2, &[2]).unwrap()).unwrap();
        assert!(via_rho.distance(&rho) < 1e-12);
    }

    #[test]
    fn encode_zero_secret() {
        let pair = q7_sample_pair();
        let psi = encode(&pair, &StateVector::basis(7, 3, 0).unwrap()).unwrap();
        let nz: Vec<_> = psi.nonzero().collect();
        assert_eq!(nz.len(), 7);
        for (i, a) in nz {
            let l = psi.labels(i);
            assert!(l.iter().all(|&d| d == l[0]));
            assert!((a.re - 1.0 / 7f64.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn encode_first_unit_secret() {
        let pair = q7_sample_pair();
        let alpha = [3u32, 5, 6, 1, 4];
        let psi = encode(&pair, &StateVector::basis(7, 3, 49).unwrap()).unwrap();
        let mut expected: Vec<usize> = (0..7u32)
            .map(|r| index_of(7, alpha.iter().map(|a| (r + a) % 7)))
            .collect();
        expected.sort_unstable();
        let got: Vec<usize> = psi.nonzero().map(|(i, _)| i).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn q7_sample_oracle_values() {
        let pair = q7_sample_pair();
        let ens = Ensemble::new(&pair).unwrap();
        let j = ShareSet::from_indices(5, &[1, 2, 3]).unwrap();
        assert!((ens.holevo(&j).unwrap() - 2.0).abs() < 1e-9);
        assert!((ens.coherent(&j).unwrap() - 1.0).abs() < 1e-9);
        let mix = von_neumann_entropy(&ens.mixture(&j).unwrap()).unwrap();
        assert!((mix - 3.0).abs() < 1e-9);
        let single = von_neumann_entropy(&ens.reduced(0, &j).unwrap()).unwrap();
        assert!((single - 1.0).abs() < 1e-9);
        let j45 = ShareSet::from_indices(5, &[4, 5]).unwrap();
        assert!((ens.coherent(&j45).unwrap() + 1.0).abs() < 1e-9);
        for i in 1..=5 {
            let s = ShareSet::from_indices(5, &[i]).unwrap();
            assert!(ens.holevo(&s).unwrap().abs() < 1e-9);
            assert!(ens.state_independent(&s, 1e-9).unwrap());
        }
        assert!((ens.holevo(&ShareSet::all(5)).unwrap() - 3.0).abs() < 1e-9);
    }

    #[test]
    fn decoder_refuses_forbidden_sets() {
        let pair = q7_sample_pair();
        let j = ShareSet::from_indices(5, &[1]).unwrap();
        assert!(matches!(build_decoder(&pair, &j), Err(Error::NothingToReconstruct)));
        assert!(matches!(build_decoder(&pair, &ShareSet::empty(5)), Err(Error::EmptySubset)));
    }

    #[test]
    fn decoder_example_structure() {
        let pair = q7_sample_pair();
        let j = ShareSet::from_indices(5, &[1, 2, 3]).unwrap();
        let d = build_decoder(&pair, &j).unwrap();
        assert_eq!(d.dims(), [1, 1, 0, 1, 0]);
        assert!(d.is_bijective().unwrap());
    }
}

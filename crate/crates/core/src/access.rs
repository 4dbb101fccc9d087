//! Access structure of the ramp scheme built from a nested pair.
//!
//! Everything here is computed in secret coordinates F_q^L (L = secret
//! dimension) pulled back through the labelling `f`. For a share set A the
//! induced map `P̃_A : C₁/C₂ → P_A(C₁)/P_A(C₂)` has kernel
//!
//! ```text
//! ker P̃_A = { s : P_A(f(s)) ⊆ P_A(C₂) }
//!         = first L coordinates of { (s, t) : s·P_A(R) + t·P_A(B₂) = 0 }
//! ```
//!
//! where R holds the coset representatives and B₂ a basis of C₂. Empty A
//! gives the full space and A = {1..n} gives {0}, so the degenerate share
//! sets need no special casing.

use serde::Serialize;

use crate::code::{NestedPair, ShareSet};
use crate::error::{Error, Result};
use crate::info;
use crate::linalg::Subspace;

/// Largest n accepted by [`classify_all`].
pub const MAX_CLASSIFY_PARTICIPANTS: usize = 20;

/// `ker(P̃_A)` in secret coordinates.
pub fn induced_kernel(pair: &NestedPair, a: &ShareSet) -> Subspace {
    let cols = a.members();
    let stacked = pair
        .representative_matrix()
        .vstack(pair.c2().generator())
        .expect("representatives and C2 share length")
        .select_columns(&cols);
    let left_kernel = stacked.transpose().kernel_basis();
    let l = pair.secret_dim();
    left_kernel.project(&(0..l).collect::<Vec<_>>())
}

#[derive(Clone, Debug)]
pub struct QuotientKernels {
    pub j: ShareSet,
    /// `ker(P̃_{J̄})`
    pub ker_complement: Subspace,
    /// `ker(P̃_J)`
    pub ker_j: Subspace,
    /// `ker(P̃_{J̄}) ∩ ker(P̃_J)`
    pub ker_both: Subspace,
}

pub fn quotient_kernels(pair: &NestedPair, j: &ShareSet) -> QuotientKernels {
    let ker_complement = induced_kernel(pair, &j.complement());
    let ker_j = induced_kernel(pair, j);
    let ker_both = ker_complement.intersect(&ker_j).expect("same secret space");
    QuotientKernels {
        j: *j,
        ker_complement,
        ker_j,
        ker_both,
    }
}

/// Number of secret qudits that J can reconstruct:
/// `dim ker(P̃_{J̄}) − dim(ker(P̃_{J̄}) ∩ ker(P̃_J))`.
pub fn reconstructible_qudits(pair: &NestedPair, j: &ShareSet) -> usize {
    let k = quotient_kernels(pair, j);
    k.ker_complement.dim() - k.ker_both.dim()
}

/// `dim P̃_J(ker P̃_{J̄})` computed directly as an image dimension.
pub fn image_dimension(pair: &NestedPair, j: &ShareSet) -> usize {
    let ker_c = induced_kernel(pair, &j.complement());
    let cols = j.members();
    if cols.is_empty() {
        return 0;
    }
    let images: Vec<_> = ker_c
        .basis_vectors()
        .iter()
        .map(|s| {
            let x = pair.representative(s);
            cols.iter().map(|&c| x[c]).collect::<Vec<_>>()
        })
        .collect();
    let f = pair.field();
    let img = Subspace::span(f, cols.len(), &images).expect("lengths agree");
    let pc2 = pair.c2().space().project(&cols);
    img.sum(&pc2).expect("same ambient").dim() - pc2.dim()
}

/// Evidence behind a qualified/unqualified verdict; the three routes are
/// cross-checked on every call.
#[derive(Clone, Debug, Serialize)]
pub struct QualifiedWitness {
    pub qualified: bool,
    pub reconstructible_qudits: usize,
    /// dim P_J(C₁) − dim P_J(C₂) = dim C₁ − dim C₂
    pub full_rank_on_j: bool,
    /// dim P_{J̄}(C₁) = dim P_{J̄}(C₂)
    pub complement_blind: bool,
    /// dim(C₂⊥ ∩ ker P_J) = dim(C₁⊥ ∩ ker P_J)
    pub dual_shortening_equal: bool,
}

pub fn qualified_witness(pair: &NestedPair, j: &ShareSet) -> Result<QualifiedWitness> {
    let l = pair.secret_dim();
    let jc = j.complement();
    let recon = reconstructible_qudits(pair, j);
    let by_kernels = recon == l;
    let full_rank_on_j = info::holevo_closed(pair, j) as usize == l;
    let complement_blind = info::holevo_closed(pair, &jc) == 0;
    let d1 = pair.c1().dual().vanishing_on(j).dim();
    let d2 = pair.c2().dual().vanishing_on(j).dim();
    let dual_shortening_equal = d2 == d1;
    let by_projections = full_rank_on_j && complement_blind;
    let by_duals = full_rank_on_j && dual_shortening_equal;
    if by_kernels != by_projections || by_kernels != by_duals {
        return Err(Error::InternalInconsistency(format!(
            "qualified routes disagree for J = {j}: kernels {by_kernels}, projections {by_projections}, duals {by_duals}"
        )));
    }
    Ok(QualifiedWitness {
        qualified: by_kernels,
        reconstructible_qudits: recon,
        full_rank_on_j,
        complement_blind,
        dual_shortening_equal,
    })
}

pub fn is_qualified(pair: &NestedPair, j: &ShareSet) -> Result<bool> {
    Ok(qualified_witness(pair, j)?.qualified)
}

/// Forbidden means zero Holevo information: dim P_J(C₁) = dim P_J(C₂).
pub fn is_forbidden(pair: &NestedPair, j: &ShareSet) -> bool {
    info::holevo_closed(pair, j) == 0
}

/// `C₁/C₂ = V ⊕ W ⊕ K` with `ker(P̃_{J̄}) = V ⊕ (ker(P̃_{J̄}) ∩ K)` and
/// `K = ker(P̃_J)`.
#[derive(Clone, Debug)]
pub struct SecretDecomposition {
    pub v: Subspace,
    pub w: Subspace,
    pub k: Subspace,
}

impl SecretDecomposition {
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.v.dim(), self.w.dim(), self.k.dim())
    }
}

pub fn decompose_secret(pair: &NestedPair, j: &ShareSet) -> SecretDecomposition {
    let kern = quotient_kernels(pair, j);
    let v = kern
        .ker_both
        .complement_in(&kern.ker_complement)
        .expect("intersection lies in each factor");
    let vk = v.sum(&kern.ker_j).expect("same ambient");
    let w = vk.complement();
    SecretDecomposition { v, w, k: kern.ker_j }
}

#[derive(Clone, Debug, Serialize)]
pub struct SubsetRecord {
    pub mask: u64,
    /// 1-based participant indices.
    pub members: Vec<usize>,
    pub size: usize,
    pub reconstructible_qudits: usize,
    pub qualified: bool,
    pub forbidden: bool,
    pub holevo: i64,
    pub entropy_single: i64,
    pub entropy_mixture: i64,
    pub coherent_info: i64,
    pub max_coherent_info: i64,
    /// reconstructible(J) + reconstructible(J̄) = secret_dim
    pub symmetric_equality: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SizeSummary {
    pub size: usize,
    pub subsets: usize,
    pub qualified: usize,
    pub forbidden: usize,
    pub intermediate: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct AccessReport {
    pub n: usize,
    pub secret_dim: usize,
    pub records: Vec<SubsetRecord>,
    pub per_size: Vec<SizeSummary>,
    pub largest_forbidden_size: Option<usize>,
    pub smallest_qualified_size: Option<usize>,
    /// Supersets of qualified sets are qualified.
    pub monotone: bool,
    /// The complement of every qualified set is forbidden.
    pub complement_law: bool,
}

pub fn subset_record(pair: &NestedPair, j: &ShareSet) -> Result<SubsetRecord> {
    let w = qualified_witness(pair, j)?;
    let summary = info::summarize(pair, j)?;
    let recon_c = reconstructible_qudits(pair, &j.complement());
    Ok(SubsetRecord {
        mask: j.mask(),
        members: j.members().iter().map(|i| i + 1).collect(),
        size: j.len(),
        reconstructible_qudits: w.reconstructible_qudits,
        qualified: w.qualified,
        forbidden: summary.holevo == 0,
        holevo: summary.holevo,
        entropy_single: summary.entropy_single,
        entropy_mixture: summary.entropy_mixture,
        coherent_info: summary.coherent_info,
        max_coherent_info: summary.max_coherent_info,
        symmetric_equality: w.reconstructible_qudits + recon_c == pair.secret_dim(),
    })
}

/// Classifies every subset of {1..n}. Records are ordered by mask.
pub fn classify_all(pair: &NestedPair) -> Result<AccessReport> {
    let n = pair.n();
    if n > MAX_CLASSIFY_PARTICIPANTS {
        return Err(Error::TooManyParticipants {
            n,
            max: MAX_CLASSIFY_PARTICIPANTS,
        });
    }
    let records = ShareSet::all_subsets(n)
        .map(|j| subset_record(pair, &j))
        .collect::<Result<Vec<_>>>()?;
    Ok(build_report(n, pair.secret_dim(), records))
}

pub(crate) fn build_report(n: usize, secret_dim: usize, records: Vec<SubsetRecord>) -> AccessReport {
    let per_size = (0..=n)
        .map(|size| {
            let rows: Vec<_> = records.iter().filter(|r| r.size == size).collect();
            let qualified = rows.iter().filter(|r| r.qualified).count();
            let forbidden = rows.iter().filter(|r| r.forbidden).count();
            SizeSummary {
                size,
                subsets: rows.len(),
                qualified,
                forbidden,
                intermediate: rows.len() - qualified - forbidden,
            }
        })
        .collect();
    let largest_forbidden_size = records.iter().filter(|r| r.forbidden).map(|r| r.size).max();
    let smallest_qualified_size = records.iter().filter(|r| r.qualified).map(|r| r.size).min();
    let complete = records.len() == 1usize << n;
    let by_mask = |m: u64| &records[m as usize];
    let full = if n >= 64 { u64::MAX } else { (1u64 << n) - 1 };
    let monotone = complete
        && records.iter().filter(|r| r.qualified).all(|r| {
            (0..n).all(|i| by_mask(r.mask | 1 << i).qualified)
        });
    let complement_law = complete
        && records
            .iter()
            .filter(|r| r.qualified)
            .all(|r| by_mask(!r.mask & full).forbidden);
    AccessReport {
        n,
        secret_dim,
        records,
        per_size,
        largest_forbidden_size,
        smallest_qualified_size,
        monotone,
        complement_law,
    }
}

impl AccessReport {
    pub fn to_csv(&self) -> Result<String> {
        records_to_csv(&self.sorted_records())
    }

    /// Records sorted by |J|, then mask.
    pub fn sorted_records(&self) -> Vec<&SubsetRecord> {
        let mut v: Vec<_> = self.records.iter().collect();
        v.sort_by_key(|r| (r.size, r.mask));
        v
    }
}

/// One CSV row per record, in the given order.
pub fn records_to_csv(records: &[&SubsetRecord]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "mask",
        "size",
        "members",
        "qudits",
        "qualified",
        "forbidden",
        "K_J",
        "entropy_single",
        "entropy_mixture",
        "coherent_info",
        "max_coherent_info",
    ])
    .map_err(|e| Error::Parse(e.to_string()))?;
    for r in records {
        let members: Vec<String> = r.members.iter().map(|m| m.to_string()).collect();
        w.write_record([
            r.mask.to_string(),
            r.size.to_string(),
            members.join(" "),
            r.reconstructible_qudits.to_string(),
            r.qualified.to_string(),
            r.forbidden.to_string(),
            r.holevo.to_string(),
            r.entropy_single.to_string(),
            r.entropy_mixture.to_string(),
            r.coherent_info.to_string(),
            r.max_coherent_info.to_string(),
        ])
        .map_err(|e| Error::Parse(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::q7_sample_pair;
    use crate::linalg::Matrix;

    fn j(ix: &[usize]) -> ShareSet {
        ShareSet::from_indices(5, ix).unwrap()
    }

    fn span(rows: &[Vec<u32>]) -> Subspace {
        let pair = q7_sample_pair();
        let m = Matrix::from_u32_rows(pair.field(), 3, rows).unwrap();
        Subspace::from_matrix(&m)
    }

    #[test]
    fn q7_pair_kernels() {
        let pair = q7_sample_pair();
        let k = quotient_kernels(&pair, &j(&[1, 2, 3]));
        assert_eq!(k.ker_complement, span(&[vec![2, 1, 0], vec![0, 0, 1]]));
        assert_eq!(k.ker_both, span(&[vec![0, 0, 1]]));
        assert_eq!(k.ker_j, span(&[vec![0, 0, 1]]));
        assert_eq!(reconstructible_qudits(&pair, &j(&[1, 2, 3])), 1);
    }

    #[test]
    fn degenerate_share_sets() {
        let pair = q7_sample_pair();
        let all = ShareSet::all(5);
        let k = quotient_kernels(&pair, &all);
        assert_eq!(k.ker_complement.dim(), 3);
        assert!(k.ker_j.is_zero());
        assert_eq!(reconstructible_qudits(&pair, &all), 3);
        assert_eq!(reconstructible_qudits(&pair, &ShareSet::empty(5)), 0);
        assert!(!is_qualified(&pair, &ShareSet::empty(5)).unwrap());
        assert!(is_qualified(&pair, &all).unwrap());
        assert!(!is_forbidden(&pair, &all));
        assert!(is_forbidden(&pair, &ShareSet::empty(5)));
    }

    #[test]
    fn q7_sample_qualified_and_forbidden() {
        let pair = q7_sample_pair();
        assert!(is_qualified(&pair, &j(&[1, 2, 3, 5])).unwrap());
        assert!(!is_qualified(&pair, &j(&[1, 2, 3])).unwrap());
        for i in 1..=5 {
            assert!(is_forbidden(&pair, &j(&[i])));
        }
        assert!(!is_forbidden(&pair, &j(&[4, 5])));
    }

    #[test]
    fn q7_pair_decomposition() {
        let pair = q7_sample_pair();
        let d = decompose_secret(&pair, &j(&[1, 2, 3]));
        assert_eq!(d.k, span(&[vec![0, 0, 1]]));
        assert_eq!(d.v, span(&[vec![2, 1, 0]]));
        assert_eq!(d.dims(), (1, 1, 1));
        let all = d.v.sum(&d.w).unwrap().sum(&d.k).unwrap();
        assert_eq!(all.dim(), 3);
        let q = decompose_secret(&pair, &ShareSet::all(5));
        assert_eq!(q.dims(), (3, 0, 0));
    }

    #[test]
    fn image_dimension_matches_kernel_formula() {
        let pair = q7_sample_pair();
        for s in ShareSet::all_subsets(5) {
            assert_eq!(image_dimension(&pair, &s), reconstructible_qudits(&pair, &s), "{s}");
        }
    }

    #[test]
    fn classify_q7_sample() {
        let report = classify_all(&q7_sample_pair()).unwrap();
        assert_eq!(report.records.len(), 32);
        for r in &report.records {
            assert_eq!(r.qualified, r.size >= 4, "{:?}", r.members);
            assert_eq!(r.forbidden, r.size <= 1, "{:?}", r.members);
        }
        assert!(report.monotone && report.complement_law);
        assert_eq!(report.smallest_qualified_size, Some(4));
        assert_eq!(report.largest_forbidden_size, Some(1));
        let csv = report.to_csv().unwrap();
        assert_eq!(csv.lines().count(), 33);
    }
}

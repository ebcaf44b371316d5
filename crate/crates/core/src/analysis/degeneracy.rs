//! Eigenvalue clustering and defectiveness.
//!
//! At an exceptional point eigenvalues coalesce and the eigenvector matrix
//! becomes singular. In floating point an order-`k` coalescence scatters by
//! about `ε^{1/k}` and the eigenvector condition number blows up, so both are
//! reported rather than resolved into Jordan blocks.

use crate::error::Result;
use crate::linalg::{ComplexMatrix, EigenDecomposition, C64};
use crate::vectorize::{self, Superoperator};

/// Eigenvector condition numbers above this flag a defective spectrum.
pub const DEFECTIVE_CONDITION: f64 = 1e8;

#[derive(Clone, Debug, PartialEq)]
pub struct Cluster {
    /// Mean of the member eigenvalues.
    pub center: C64,
    /// Indices into the decomposition's eigenvalue list, ascending.
    pub members: Vec<usize>,
    /// Largest pairwise distance between members.
    pub diameter: f64,
}

impl Cluster {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DegeneracyReport {
    /// Ordered by center, real part first.
    pub clusters: Vec<Cluster>,
    pub eigenvector_condition: f64,
    pub defective_flag: bool,
}

impl DegeneracyReport {
    pub fn largest_cluster(&self) -> Option<&Cluster> {
        self.clusters.iter().max_by_key(|c| c.len())
    }
}

pub fn detect_degeneracy(superop: &Superoperator, cluster_tol: f64) -> Result<DegeneracyReport> {
    Ok(report(&vectorize::spectrum(superop)?, cluster_tol))
}

/// Same analysis for any eigendecomposition, e.g. Ritz values or the
/// Heisenberg coefficient matrix.
pub fn report(dec: &EigenDecomposition, cluster_tol: f64) -> DegeneracyReport {
    DegeneracyReport {
        clusters: cluster_eigenvalues(&dec.eigenvalues, cluster_tol),
        eigenvector_condition: dec.eigenvector_condition,
        defective_flag: dec.eigenvector_condition > DEFECTIVE_CONDITION,
    }
}

/// Report for the eigenvalues of an arbitrary square matrix.
pub fn report_for_matrix(m: &ComplexMatrix, cluster_tol: f64) -> Result<DegeneracyReport> {
    Ok(report(&crate::linalg::eig(m)?, cluster_tol))
}

/// Single-linkage clustering: two eigenvalues share a cluster when a chain of
/// neighbours each within `tol` connects them.
pub fn cluster_eigenvalues(values: &[C64], tol: f64) -> Vec<Cluster> {
    let n = values.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if (values[i] - values[j]).norm() <= tol {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }

    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let root = find(&mut parent, i);
        if slot[root] == usize::MAX {
            slot[root] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[root]].push(i);
    }

    let mut clusters: Vec<Cluster> = groups
        .into_iter()
        .map(|members| {
            let center = members.iter().map(|&i| values[i]).sum::<C64>() / members.len() as f64;
            let mut diameter: f64 = 0.0;
            for (k, &i) in members.iter().enumerate() {
                for &j in &members[k + 1..] {
                    diameter = diameter.max((values[i] - values[j]).norm());
                }
            }
            Cluster {
                center,
                members,
                diameter,
            }
        })
        .collect();
    clusters.sort_by(|a, b| a.center.re.total_cmp(&b.center.re).then(a.center.im.total_cmp(&b.center.im)));
    clusters
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ZERO;
    use crate::model::LindbladModel;
    use crate::tls::{self, TlsParams};
    use crate::vectorize::build_superoperator;

    #[test]
    fn exceptional_point_detected() {
        let l = build_superoperator(&tls::build_tls(TlsParams::exceptional_point(1.0)));
        let rep = detect_degeneracy(&l, 1e-3).unwrap();
        assert!(rep.defective_flag);
        let big = rep.largest_cluster().unwrap();
        assert_eq!(big.len(), 3);
        assert!((big.center - C64::new(-2.0 / 3.0, 0.0)).norm() < 1e-4);
        assert_eq!(rep.clusters.len(), 2);
    }

    #[test]
    fn pure_decay_degeneracy_is_not_defective() {
        let l = build_superoperator(&tls::build_tls(TlsParams::new(0.0, 0.0, 1.0).unwrap()));
        let rep = detect_degeneracy(&l, 1e-3).unwrap();
        assert!(!rep.defective_flag);
        let sizes: Vec<usize> = rep.clusters.iter().map(Cluster::len).collect();
        assert_eq!(sizes, vec![1, 2, 1]);
        assert!((rep.clusters[1].center - C64::new(-0.5, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn generic_parameters_give_singletons() {
        let l = build_superoperator(&tls::build_tls(TlsParams::new(0.7, 1.3, 0.9).unwrap()));
        let rep = detect_degeneracy(&l, 1e-3).unwrap();
        assert!(rep.clusters.iter().all(|c| c.len() == 1));
        assert!(!rep.defective_flag);
    }

    #[test]
    fn zero_model_is_one_cluster() {
        let l = build_superoperator(&LindbladModel::trivial(2));
        let rep = detect_degeneracy(&l, 1e-3).unwrap();
        assert_eq!(rep.clusters.len(), 1);
        assert_eq!(rep.clusters[0].center, ZERO);
        assert!(!rep.defective_flag);
    }

    #[test]
    fn chaining_and_ordering() {
        let v = [C64::new(0.0, 0.0), C64::new(-1.0, 0.0), C64::new(0.5e-3, 0.0), C64::new(1.0e-3, 0.0)];
        let cl = cluster_eigenvalues(&v, 0.6e-3);
        assert_eq!(cl.len(), 2);
        assert_eq!(cl[0].members, vec![1]);
        assert_eq!(cl[1].members, vec![0, 2, 3]);
        assert!((cl[1].diameter - 1e-3).abs() < 1e-15);
    }
}

//! Lattices presented by a rational basis of an ambient vector space.
//!
//! Points are stored as integer coordinate vectors relative to the basis;
//! ambient rational coordinates are used for display and for pairings.

use crate::linalg::{self, Q};
use crate::{Error, Result};
use num_traits::Zero;

/// A full-rank lattice inside `Q^rank`, given by basis columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBasis {
    rank: usize,
    /// `basis[j]` is the j-th basis vector in ambient coordinates.
    basis: Vec<Vec<Q>>,
    /// Inverse of the basis matrix, rows indexed by coordinate.
    inv: Vec<Vec<Q>>,
}

impl LatticeBasis {
    pub fn new(basis: Vec<Vec<Q>>) -> Result<Self> {
        let rank = basis.len();
        if rank == 0 || basis.iter().any(|v| v.len() != rank) {
            return Err(Error::InvalidParameter("lattice basis must be square and nonempty".into()));
        }
        // Column matrix B with B[i][j] = basis[j][i].
        let b_mat: Vec<Vec<Q>> = (0..rank)
            .map(|i| (0..rank).map(|j| basis[j][i].clone()).collect())
            .collect();
        let inv = linalg::invert_rational(&b_mat)
            .map_err(|_| Error::InvalidParameter("lattice basis is singular".into()))?;
        Ok(Self { rank, basis, inv })
    }

    /// The standard lattice `Z^rank`.
    pub fn standard(rank: usize) -> Self {
        let basis: Vec<Vec<Q>> = (0..rank)
            .map(|j| {
                (0..rank)
                    .map(|i| if i == j { linalg::qint(1) } else { Q::zero() })
                    .collect()
            })
            .collect();
        Self::new(basis).expect("standard basis is invertible")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn basis_vectors(&self) -> &[Vec<Q>] {
        &self.basis
    }

    /// Ambient coordinates of the point with the given lattice coordinates.
    pub fn to_ambient(&self, coords: &[i64]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.rank];
        for (j, &c) in coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let cq = linalg::qint(c);
            for i in 0..self.rank {
                out[i] += &cq * &self.basis[j][i];
            }
        }
        out
    }

    /// Rational lattice coordinates of an ambient point.
    pub fn coords_of(&self, ambient: &[Q]) -> Vec<Q> {
        linalg::qmat_vec(&self.inv, ambient)
    }

    /// Integer lattice coordinates of an ambient point, if it lies in the lattice.
    pub fn from_ambient(&self, ambient: &[Q]) -> Result<Vec<i64>> {
        let coords = self.coords_of(ambient);
        linalg::q_vec_to_int(&coords).ok_or(Error::NotInLattice)
    }

    pub fn contains(&self, ambient: &[Q]) -> bool {
        self.from_ambient(ambient).is_ok()
    }

    /// Gram matrix of ambient dot products between this basis and another
    /// (rows: self, columns: other). Dual bases give the identity.
    pub fn gram_with(&self, other: &LatticeBasis) -> Vec<Vec<Q>> {
        self.basis
            .iter()
            .map(|v| other.basis.iter().map(|w| linalg::qdot(v, w)).collect())
            .collect()
    }

    /// True if the two bases are dual under the ambient dot product.
    pub fn is_dual_to(&self, other: &LatticeBasis) -> bool {
        if self.rank != other.rank {
            return false;
        }
        let g = self.gram_with(other);
        (0..self.rank).all(|i| {
            (0..self.rank).all(|j| {
                let expect = if i == j { linalg::qint(1) } else { Q::zero() };
                g[i][j] == expect
            })
        })
    }

    /// The dual lattice basis under the ambient dot product.
    pub fn dual(&self) -> LatticeBasis {
        // Dual basis vectors are the rows of the inverse matrix.
        let basis: Vec<Vec<Q>> = (0..self.rank).map(|i| self.inv[i].clone()).collect();
        LatticeBasis::new(basis).expect("dual of invertible basis is invertible")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{qfrac, qint};

    #[test]
    fn roundtrip_standard() {
        let l = LatticeBasis::standard(3);
        let p = l.to_ambient(&[1, -2, 5]);
        assert_eq!(l.from_ambient(&p).unwrap(), vec![1, -2, 5]);
    }

    #[test]
    fn sym_cover_lattices_are_dual() {
        // n = 2 cover: cochar basis (1,-1),(0,2); char basis (1,0),(1/2,1/2).
        let cochar = LatticeBasis::new(vec![
            vec![qint(1), qint(-1)],
            vec![qint(0), qint(2)],
        ])
        .unwrap();
        let chars = LatticeBasis::new(vec![
            vec![qint(1), qint(0)],
            vec![qfrac(1, 2), qfrac(1, 2)],
        ])
        .unwrap();
        assert!(chars.is_dual_to(&cochar));
        // (1,1) ambient lies in the cochar lattice, (1,0) does not.
        assert!(cochar.contains(&[qint(1), qint(1)]));
        assert!(!cochar.contains(&[qint(1), qint(0)]));
    }
}

//! Linear subspaces of ℝⁿ given by a basis.

use serde::{Deserialize, Serialize};

use super::linalg::{self, RatVec};
use super::polyhedron::{Halfspace, HalfspaceSystem, Polyhedron};
use super::rat::Rat;
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Subspace {
    dim: usize,
    basis: Vec<RatVec>,
}

impl Subspace {
    /// Build from a basis; rejects dependent generators.
    pub fn new(dim: usize, basis: Vec<RatVec>) -> Result<Self> {
        for b in &basis {
            if b.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: b.len(),
                });
            }
        }
        if linalg::rank(&basis, dim) != basis.len() {
            return Err(Error::Parse("subspace basis is linearly dependent".into()));
        }
        Ok(Subspace { dim, basis })
    }

    pub fn whole(dim: usize) -> Self {
        Subspace {
            dim,
            basis: (0..dim).map(|i| linalg::unit(dim, i)).collect(),
        }
    }

    /// Span of the coordinate axes in `axes`.
    pub fn coordinate(dim: usize, axes: &[usize]) -> Self {
        Subspace {
            dim,
            basis: axes.iter().map(|&i| linalg::unit(dim, i)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[RatVec] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        if linalg::is_zero_vec(v) {
            return true;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        linalg::rank(&rows, self.dim) == self.basis.len()
    }

    /// Orthogonal complement `{w : ⟨w, b⟩ = 0 for all basis b}`.
    pub fn orthogonal_complement(&self) -> Subspace {
        Subspace {
            dim: self.dim,
            basis: linalg::nullspace(&self.basis, self.dim),
        }
    }

    /// The subspace as a polyhedron cut out by its complement's equations.
    pub fn as_polyhedron(&self) -> Polyhedron {
        let comp = self.orthogonal_complement();
        let eqs = comp
            .basis
            .iter()
            .map(|c| Halfspace::new(c.clone(), Rat::zero()))
            .collect();
        Polyhedron::from_hrep(self.dim, HalfspaceSystem { ineqs: vec![], eqs }).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rv(xs: &[i64]) -> RatVec {
        xs.iter().map(|&x| Rat::from_int(x)).collect()
    }

    #[test]
    fn complement_of_line() {
        let l = Subspace::new(3, vec![rv(&[1, 1, 0])]).unwrap();
        let c = l.orthogonal_complement();
        assert_eq!(c.rank(), 2);
        for b in c.basis() {
            assert!(linalg::dot(b, &rv(&[1, 1, 0])).is_zero());
        }
        assert!(l.contains(&rv(&[2, 2, 0])));
        assert!(!l.contains(&rv(&[1, 0, 0])));
    }

    #[test]
    fn polyhedron_view() {
        let l = Subspace::coordinate(2, &[0]);
        let p = l.as_polyhedron();
        assert!(p.member(&rv(&[5, 0])));
        assert!(!p.member(&rv(&[5, 1])));
    }

    #[test]
    fn dependent_basis_rejected() {
        assert!(Subspace::new(2, vec![rv(&[1, 0]), rv(&[2, 0])]).is_err());
    }
}

//! The twisted group algebra `F^alpha[G]` with product
//! `x̄ ȳ = alpha(x,y) (xy)‾`.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use thiserror::Error;

use crate::cocycles::{CocycleError, TwoCocycle};
use crate::group::FiniteGroup;
use crate::linalg::{rank_of, Field};
use crate::monomial::{self, MonomialAlgebra};
use crate::rep_decomp::MatrixModule;
use crate::scalars::{CycScalar, RootOfUnity};

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

pub(crate) fn fresh_id() -> u64 {
    NEXT_ID.fetch_add(1, Ordering::Relaxed)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("elements belong to different algebras")]
    Mismatch,
    #[error("coefficient vector has length {got}, expected {expected}")]
    Length { got: usize, expected: usize },
    #[error("center element {0} fails to commute with the algebra")]
    NotCentral(usize),
    #[error("center elements are linearly dependent")]
    Dependent,
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
}

#[derive(Debug, Clone)]
pub struct TwistedGroupAlgebra {
    id: u64,
    cocycle: TwoCocycle,
}

/// Coefficients in the basis `ḡ`, tagged with the owning algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    algebra_id: u64,
    coeffs: Vec<CycScalar>,
}

impl AlgebraElement {
    pub fn coeffs(&self) -> &[CycScalar] {
        &self.coeffs
    }

    pub fn coeff(&self, g: usize) -> &CycScalar {
        &self.coeffs[g]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(CycScalar::is_zero)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&g| !self.coeffs[g].is_zero()).collect()
    }
}

impl TwistedGroupAlgebra {
    /// Rejects invalid cocycles.
    pub fn new(cocycle: TwoCocycle) -> Result<Self, AlgebraError> {
        cocycle.validate().map_err(CocycleError::Invalid)?;
        Ok(TwistedGroupAlgebra { id: fresh_id(), cocycle })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.cocycle.group()
    }

    pub fn cocycle(&self) -> &TwoCocycle {
        &self.cocycle
    }

    pub fn element(&self, coeffs: Vec<CycScalar>) -> Result<AlgebraElement, AlgebraError> {
        if coeffs.len() != self.dim() {
            return Err(AlgebraError::Length {
                got: coeffs.len(),
                expected: self.dim(),
            });
        }
        Ok(AlgebraElement {
            algebra_id: self.id,
            coeffs,
        })
    }

    pub fn zero(&self) -> AlgebraElement {
        self.wrap(vec![CycScalar::zero(); self.dim()])
    }

    pub fn one(&self) -> AlgebraElement {
        self.basis(self.group().identity())
    }

    /// The basis element `ḡ`.
    pub fn basis(&self, g: usize) -> AlgebraElement {
        self.wrap(monomial::basis_vector(self, g))
    }

    fn wrap(&self, coeffs: Vec<CycScalar>) -> AlgebraElement {
        AlgebraElement {
            algebra_id: self.id,
            coeffs,
        }
    }

    fn check(&self, a: &AlgebraElement) -> Result<(), AlgebraError> {
        if a.algebra_id != self.id {
            return Err(AlgebraError::Mismatch);
        }
        Ok(())
    }

    pub fn multiply(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.wrap(monomial::multiply(self, &a.coeffs, &b.coeffs)))
    }

    pub fn add(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.wrap(a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x.add(y)).collect()))
    }

    pub fn scale(&self, a: &AlgebraElement, c: &CycScalar) -> Result<AlgebraElement, AlgebraError> {
        self.check(a)?;
        Ok(self.wrap(a.coeffs.iter().map(|x| x.mul(c)).collect()))
    }

    /// `ḡ^-1 = alpha(g^-1, g)^-1 (g^-1)‾`.
    pub fn basis_inverse(&self, g: usize) -> AlgebraElement {
        let gi = self.group().inv(g);
        let mut v = vec![CycScalar::zero(); self.dim()];
        v[gi] = self.cocycle.value(gi, g).inv().to_scalar();
        self.wrap(v)
    }

    /// `z_i = sum_{t in T_i} t̄ ḡ_i t̄^-1` over the alpha-regular classes, with
    /// `g_i` the smallest member and `T_i` a greedy left transversal of the
    /// centralizer. Valid for any cocycle; centrality and independence are
    /// checked exactly before returning.
    pub fn center_basis(&self) -> Result<Vec<AlgebraElement>, AlgebraError> {
        let g = self.group();
        let mut out = Vec::new();
        for class in self.cocycle.alpha_regular_classes()? {
            let gi = class.representative;
            let tr = g.left_transversal(&g.centralizer(gi)).map_err(CocycleError::from)?;
            let mut z = self.zero();
            for &t in &tr.reps {
                let term = self.multiply(&self.multiply(&self.basis(t), &self.basis(gi))?, &self.basis_inverse(t))?;
                z = self.add(&z, &term)?;
            }
            out.push(z);
        }
        for (i, z) in out.iter().enumerate() {
            if !monomial::is_central(self, &z.coeffs) {
                return Err(AlgebraError::NotCentral(i));
            }
        }
        let vecs: Vec<Vec<CycScalar>> = out.iter().map(|z| z.coeffs.clone()).collect();
        if rank_of(&vecs, 0.0) != vecs.len() {
            return Err(AlgebraError::Dependent);
        }
        Ok(out)
    }

    /// Center computed by solving the commutation equations directly.
    pub fn center_by_kernel(&self) -> Vec<AlgebraElement> {
        monomial::center_by_kernel(self).into_iter().map(|v| self.wrap(v)).collect()
    }

    pub fn regular_class_count(&self) -> Result<usize, AlgebraError> {
        Ok(self.cocycle.alpha_regular_classes()?.len())
    }

    /// Left multiplication matrices `L_ḡ`.
    pub fn regular_representation<F: Field>(&self) -> MatrixModule<F> {
        monomial::regular_module(self)
    }

    pub fn is_semisimple(&self) -> bool {
        monomial::is_semisimple(self)
    }
}

impl MonomialAlgebra for TwistedGroupAlgebra {
    fn dim(&self) -> usize {
        self.group().order()
    }

    fn conductor(&self) -> u32 {
        self.cocycle.conductor()
    }

    fn basis_product(&self, i: usize, j: usize) -> Option<(RootOfUnity, usize)> {
        Some((self.cocycle.value(i, j), self.group().mul(i, j)))
    }

    fn identity_support(&self) -> Vec<usize> {
        vec![self.group().identity()]
    }

    fn generators(&self) -> Vec<Vec<usize>> {
        self.group().generators().into_iter().map(|g| vec![g]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Mat;

    fn v4() -> TwistedGroupAlgebra {
        TwistedGroupAlgebra::new(TwoCocycle::klein_four_nontrivial()).unwrap()
    }

    fn s3() -> TwistedGroupAlgebra {
        TwistedGroupAlgebra::new(TwoCocycle::trivial(Arc::new(FiniteGroup::symmetric(3)))).unwrap()
    }

    #[test]
    fn v4_basis_anticommute() {
        let a = v4();
        let (x, y) = (2, 1);
        let xy = a.multiply(&a.basis(x), &a.basis(y)).unwrap();
        let yx = a.multiply(&a.basis(y), &a.basis(x)).unwrap();
        assert_eq!(xy, a.scale(&yx, &CycScalar::from_integer(-1)).unwrap());
        for g in 0..4 {
            assert_eq!(a.multiply(&a.one(), &a.basis(g)).unwrap(), a.basis(g));
        }
    }

    #[test]
    fn basis_inverses() {
        for a in [v4(), s3()] {
            for g in a.group().elements() {
                let inv = a.basis_inverse(g);
                assert_eq!(a.multiply(&a.basis(g), &inv).unwrap(), a.one());
                assert_eq!(a.multiply(&inv, &a.basis(g)).unwrap(), a.one());
            }
        }
        // (1,1) is self-inverse and alpha((1,1),(1,1)) = -1
        let a = v4();
        assert_eq!(a.basis_inverse(3), a.scale(&a.basis(3), &CycScalar::from_integer(-1)).unwrap());
    }

    #[test]
    fn centers() {
        let a = s3();
        let z = a.center_basis().unwrap();
        assert_eq!(z.len(), 3);
        let sizes: Vec<usize> = z.iter().map(|e| e.support().len()).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
        assert_eq!(a.center_by_kernel().len(), 3);
        let a = v4();
        assert_eq!(a.center_basis().unwrap(), vec![a.one()]);
        assert_eq!(a.center_by_kernel().len(), 1);
        let t = TwistedGroupAlgebra::new(TwoCocycle::trivial(Arc::new(FiniteGroup::trivial()))).unwrap();
        assert_eq!(t.center_basis().unwrap(), vec![t.one()]);
    }

    #[test]
    fn regular_representation_is_multiplicative() {
        let a = v4();
        let reg = a.regular_representation::<CycScalar>();
        for x in 0..4 {
            for y in 0..4 {
                let lhs = reg.action(x).matmul(reg.action(y));
                let rhs = reg.action(a.group().mul(x, y)).scale(&a.cocycle().value(x, y).to_scalar());
                assert_eq!(lhs, rhs);
            }
        }
        let t = TwistedGroupAlgebra::new(TwoCocycle::trivial(Arc::new(FiniteGroup::trivial()))).unwrap();
        assert_eq!(*t.regular_representation::<CycScalar>().action(0), Mat::identity(1));
    }

    #[test]
    fn trace_form_of_z2() {
        let a = TwistedGroupAlgebra::new(TwoCocycle::trivial(Arc::new(FiniteGroup::cyclic(2)))).unwrap();
        let gram = monomial::trace_form(&a);
        let two = CycScalar::from_integer(2);
        let zero = CycScalar::zero();
        assert_eq!(gram, Mat::from_rows(vec![vec![two.clone(), zero.clone()], vec![zero, two]]));
        assert!(a.is_semisimple());
        assert!(v4().is_semisimple());
    }

    #[test]
    fn mismatched_algebras_rejected() {
        let (a, b) = (v4(), v4());
        assert_eq!(a.multiply(&a.one(), &b.one()), Err(AlgebraError::Mismatch));
    }
}

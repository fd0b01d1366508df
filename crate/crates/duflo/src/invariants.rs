//! Adjoint derivations and exact bases of adjoint-invariant polynomials,
//! computed degree by degree as kernels of rational linear systems.

use std::collections::BTreeSet;

use num::Zero;

use crate::diffop::DiffOp;
use crate::lie::LieAlgebra;
use crate::linalg::kernel_basis;
use crate::pbw::{Enveloping, PBWElement};
use crate::poly::{MultiIndex, Poly};
use crate::rat::Rat;

/// The first-order operator attached to the generator `e_a`, with coefficient
/// `c^j_{ak}` on the term `x_k·∂_j`.
///
/// Its two actions split the two flavors of adjoint invariance: applied to
/// functions ([`DiffOp::apply_fn`]) it is the vector field of the adjoint flow
/// on points, killing trace-power polynomials and the jets built from them;
/// applied to distributions ([`DiffOp::apply_dist`]) it is the derivation of
/// the adjoint representation on the symmetric algebra, killing Casimir-type
/// invariants.
pub fn adjoint_derivation(l: &LieAlgebra, a: usize) -> DiffOp {
    let d = l.dim();
    assert!(a < d, "generator index out of range");
    let mut op = DiffOp::zero(d);
    for j in 0..d {
        for k in 0..d {
            let q = l.c(a, k, j);
            if !q.is_zero() {
                op.add_term(MultiIndex::unit(d, k), MultiIndex::unit(d, j), q);
            }
        }
    }
    op
}

/// A basis of the adjoint-invariant polynomials of exact degree `degree`,
/// as the joint kernel of the distribution-side adjoint derivations.
pub fn invariant_basis(l: &LieAlgebra, degree: usize) -> Vec<Poly> {
    let d = l.dim();
    let columns = MultiIndex::of_degree(d, degree);
    let ops: Vec<DiffOp> = (0..d).map(|a| adjoint_derivation(l, a)).collect();
    // Image of each basis monomial under each derivation.
    let images: Vec<Vec<Poly>> = ops
        .iter()
        .map(|op| {
            columns
                .iter()
                .map(|mu| op.apply_dist(&Poly::monomial(d, mu.clone(), Rat::from_integer(1.into()))))
                .collect()
        })
        .collect();
    let mut rows = Vec::new();
    for per_op in &images {
        let mut outputs: BTreeSet<MultiIndex> = BTreeSet::new();
        for img in per_op {
            for (idx, _) in img.terms() {
                outputs.insert(idx.clone());
            }
        }
        for nu in &outputs {
            rows.push(per_op.iter().map(|img| img.coeff(nu)).collect::<Vec<Rat>>());
        }
    }
    kernel_basis(&rows, columns.len())
        .into_iter()
        .map(|v| {
            Poly::from_terms(
                d,
                columns.iter().cloned().zip(v.into_iter()),
            )
        })
        .collect()
}

/// Returns the first generator whose adjoint action fails to kill `u`, with
/// the nonzero commutator as witness; `None` means `u` is central.
pub fn centrality_check(env: &Enveloping, u: &PBWElement) -> Option<(usize, PBWElement)> {
    for a in 0..env.dim() {
        let comm = env.adjoint_on_u(a, u);
        if !comm.is_zero() {
            return Some((a, comm));
        }
    }
    None
}

//! The graded space `C^{N|N}`, its tensor powers, operators on them with
//! Koszul signs, the maps `τ`, `π`, `ω`, and the operators `P` and `Q`.

mod operator;
mod space;
mod vector;

pub use operator::{apply_product, apply_product_right, GradedOperator};
pub use space::{check_index, indices, left_sign, parity, right_sign, Code, Space};
pub use vector::{form, Ring, SuperVector};

use crate::error::{Error, Result};

fn sign_of<F: Ring>(e: usize) -> F {
    if e % 2 == 0 {
        F::one_elem()
    } else {
        F::one_elem().negated()
    }
}

/// `P = Σ E_{ij} ⊗ E_{ji} (-1)^{j̄}`, the graded flip.
pub fn p_operator<F: Ring>(n_half: usize) -> GradedOperator<F> {
    let idx = indices(n_half);
    let terms = idx
        .iter()
        .flat_map(|&i| idx.iter().map(move |&j| (vec![i, j], vec![j, i], sign_of(parity(j)))));
    GradedOperator::from_tensor_terms(Space::new(n_half, 2), terms).expect("valid indices")
}

/// `Q = Σ E_{ij} ⊗ E_{-i,-j} (-1)^{īj̄+ī+j̄}`; its image is one-dimensional.
pub fn q_operator<F: Ring>(n_half: usize) -> GradedOperator<F> {
    let idx = indices(n_half);
    let terms = idx.iter().flat_map(|&i| {
        idx.iter().map(move |&j| {
            let e = parity(i) * parity(j) + parity(i) + parity(j);
            (vec![i, -i], vec![j, -j], sign_of(e))
        })
    });
    GradedOperator::from_tensor_terms(Space::new(n_half, 2), terms).expect("valid indices")
}

/// `Σ_i e_i ⊗ e_{-i} (-1)^{ī}`, spanning the left image of `Q`.
pub fn q_image<F: Ring>(n_half: usize) -> SuperVector<F> {
    let space = Space::new(n_half, 2);
    SuperVector::from_terms(
        space,
        indices(n_half)
            .into_iter()
            .map(|i| (space.encode(&[i, -i]), sign_of(parity(i)))),
    )
}

/// `Σ_j e_j ⊗ e_{-j}`, spanning the right image of `Q`.
pub fn q_right_image<F: Ring>(n_half: usize) -> SuperVector<F> {
    let space = Space::new(n_half, 2);
    SuperVector::from_terms(
        space,
        indices(n_half)
            .into_iter()
            .map(|j| (space.encode(&[j, -j]), F::one_elem())),
    )
}

/// `ω = -τπ` on `End C^{N|N}`.
pub fn omega<F: Ring>(z: &GradedOperator<F>) -> Result<GradedOperator<F>> {
    if z.arity() != 1 {
        return Err(Error::ArityMismatch(z.arity(), 1));
    }
    Ok(z.tau_pi_slot(1)?.neg())
}

/// `f_{ij} = e_{ij} + ω(e_{ij}) = e_{ij} - e_{-j,-i}(-1)^{īj̄+j̄}`.
pub fn f_ij<F: Ring>(i: i32, j: i32, n_half: usize) -> Result<GradedOperator<F>> {
    let e = GradedOperator::matrix_unit(i, j, n_half)?;
    e.add(&omega(&e)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, Scalar};
    use proptest::prelude::*;

    type Op = GradedOperator<Scalar>;
    type Vector = SuperVector<Scalar>;

    fn e(idx: &[i32], n: usize) -> Vector {
        SuperVector::basis(n, idx).unwrap()
    }

    fn id(n: usize, arity: usize) -> Op {
        GradedOperator::identity(Space::new(n, arity))
    }

    #[test]
    fn matrix_units_act_as_defined() {
        let e11 = Op::matrix_unit(1, 1, 1).unwrap();
        assert_eq!(e11.apply(&e(&[1], 1)).unwrap(), e(&[1], 1));
        let e1m = Op::matrix_unit(1, -1, 1).unwrap();
        assert_eq!(e1m.apply(&e(&[-1], 1)).unwrap(), e(&[1], 1));
        assert!(e1m.apply(&e(&[1], 1)).unwrap().is_zero());
        assert_eq!(e1m.degree(), Some(1));
        assert!(Op::matrix_unit(2, 1, 1).is_err());
        // right action: e_k E_ij = δ_ik e_j
        assert_eq!(e1m.apply_right(&e(&[1], 1)).unwrap(), e(&[-1], 1));
    }

    #[test]
    fn flip_and_its_identities() {
        for n in 1..=3 {
            let p = p_operator::<Scalar>(n);
            let q = q_operator::<Scalar>(n);
            let one = id(n, 2);
            assert_eq!(p.compose(&p).unwrap(), one);
            assert_eq!(p.compose(&q).unwrap(), q.neg());
            assert_eq!(q.compose(&p).unwrap(), q);
            assert!(q.compose(&q).unwrap().is_zero());
            assert_eq!(p.tau_pi_slot(1).unwrap().tau_pi_slot(2).unwrap(), p.neg());
            assert_eq!(p.tau_pi_slot(1).unwrap().neg(), q);
            assert_eq!(p.tau_pi_slot(2).unwrap(), q);
        }
        let p = p_operator::<Scalar>(1);
        assert_eq!(p.apply(&e(&[-1, -1], 1)).unwrap(), e(&[-1, -1], 1).neg());
        assert_eq!(p.apply(&e(&[1, -1], 1)).unwrap(), e(&[-1, 1], 1));
    }

    #[test]
    fn flip_acts_by_signed_swap_on_both_sides() {
        let n = 2;
        let p = p_operator::<Scalar>(n);
        for &i in &indices(n) {
            for &j in &indices(n) {
                let want = e(&[j, i], n).scale(&int(if i < 0 && j < 0 { -1 } else { 1 }));
                assert_eq!(p.apply(&e(&[i, j], n)).unwrap(), want);
                assert_eq!(p.apply_right(&e(&[i, j], n)).unwrap(), want);
            }
        }
    }

    #[test]
    fn images_of_q() {
        for n in 1..=2 {
            let q = q_operator::<Scalar>(n);
            let left = q_image::<Scalar>(n);
            let right = q_right_image::<Scalar>(n);
            let sp = Space::new(n, 2);
            let mut saw_left = false;
            let mut saw_right = false;
            for c in sp.basis() {
                let x = Vector::from_code(sp, c);
                let l = q.apply(&x).unwrap();
                let r = q.apply_right(&x).unwrap();
                assert!(l.is_proportional_to(&left));
                assert!(r.is_proportional_to(&right));
                saw_left |= !l.is_zero();
                saw_right |= !r.is_zero();
            }
            assert!(saw_left && saw_right);
        }
        // Q(e_1 ⊗ e_{-1}) expanded termwise
        let q = q_operator::<Scalar>(1);
        let want = e(&[1, -1], 1).sub(&e(&[-1, 1], 1)).unwrap();
        assert_eq!(q.apply(&e(&[1, -1], 1)).unwrap(), want);
        // e_a ⊗ e_{-a} · Q = (-1)^ā Σ_j e_j ⊗ e_{-j}
        let r = q.apply_right(&e(&[-1, 1], 1)).unwrap();
        assert_eq!(r, q_right_image::<Scalar>(1).neg());
    }

    #[test]
    fn tau_squared_is_parity() {
        for n in 1..=3 {
            for &i in &indices(n) {
                for &j in &indices(n) {
                    let x = Op::matrix_unit(i, j, n).unwrap();
                    let tt = x.tau_slot(1).unwrap().tau_slot(1).unwrap();
                    assert_eq!(tt, x.parity_slot(1).unwrap());
                    let tp = x.pi_slot(1).unwrap().tau_slot(1).unwrap();
                    assert_eq!(tp, x.tau_pi_slot(1).unwrap());
                    assert_eq!(x.tau_pi_slot(1).unwrap().tau_pi_slot(1).unwrap(), x);
                }
            }
        }
    }

    #[test]
    fn omega_and_periplectic_generators() {
        let n = 2;
        for &i in &indices(n) {
            for &j in &indices(n) {
                let x = Op::matrix_unit(i, j, n).unwrap();
                assert_eq!(omega(&omega(&x).unwrap()).unwrap(), x);
                let f = f_ij::<Scalar>(i, j, n).unwrap();
                assert_eq!(omega(&f).unwrap(), f);
                let s = int(if (parity(i) * parity(j) + parity(j)) % 2 == 0 {
                    1
                } else {
                    -1
                });
                assert_eq!(f_ij::<Scalar>(-j, -i, n).unwrap(), f.scale(&s).neg());
            }
        }
        let f = f_ij::<Scalar>(1, -1, 1).unwrap();
        assert_eq!(f, Op::matrix_unit(1, -1, 1).unwrap().scale(&int(2)));
    }

    #[test]
    fn form_is_invariant_under_periplectic_generators() {
        let n = 2;
        for &i in &indices(n) {
            for &j in &indices(n) {
                let z = f_ij::<Scalar>(i, j, n).unwrap();
                let wz = omega(&z).unwrap();
                let dz = z.degree().unwrap();
                for &a in &indices(n) {
                    for &b in &indices(n) {
                        let (x, y) = (e(&[a], n), e(&[b], n));
                        let lhs = form(&z.apply(&x).unwrap(), &y).unwrap();
                        let mut rhs = form(&x, &wz.apply(&y).unwrap()).unwrap();
                        if parity(a) * dz % 2 == 1 {
                            rhs = -rhs;
                        }
                        assert_eq!(lhs + rhs, int(0));
                    }
                }
            }
        }
    }

    #[test]
    fn embedding_examples() {
        let p = p_operator::<Scalar>(1);
        let q = q_operator::<Scalar>(1);
        let p12 = p.embed(&[1, 2], 3).unwrap();
        let p13 = p.embed(&[1, 3], 3).unwrap();
        let p23 = p.embed(&[2, 3], 3).unwrap();
        let q12 = q.embed(&[1, 2], 3).unwrap();
        let q13 = q.embed(&[1, 3], 3).unwrap();
        let a = p12.compose(&p13).unwrap();
        assert_eq!(a, p23.compose(&p12).unwrap());
        assert_eq!(a, p13.compose(&p23).unwrap());
        assert_eq!(q13.compose(&q12).unwrap(), p23.compose(&q12).unwrap().neg());
        for n in 1..=2 {
            let p = p_operator::<Scalar>(n);
            let q = q_operator::<Scalar>(n);
            let s2 = q
                .embed(&[1, 2], 3)
                .unwrap()
                .compose(&p.embed(&[1, 3], 3).unwrap())
                .unwrap()
                .compose(&q.embed(&[2, 3], 3).unwrap())
                .unwrap();
            assert!(s2.is_zero());
        }
        assert!(p.embed(&[1, 1], 3).is_err());
        assert!(p.embed(&[1, 4], 3).is_err());
    }

    #[test]
    fn embed_reversed_slots_conjugates_by_flip() {
        let n = 2;
        let p = p_operator::<Scalar>(n);
        let q = q_operator::<Scalar>(n);
        assert_eq!(
            q.embed(&[2, 1], 2).unwrap(),
            p.compose(&q).unwrap().compose(&p).unwrap()
        );
        assert_eq!(q.embed(&[1, 2], 2).unwrap(), q);
    }

    fn arb_op(n: usize, arity: usize) -> impl Strategy<Value = Op> {
        let dim = Space::new(n, arity).dim() as u32;
        proptest::collection::vec((0..dim, 0..dim, -3i64..4), 0..12).prop_map(move |v| {
            let sp = Space::new(n, arity);
            let terms = v.into_iter().map(|(r, c, x)| (sp.decode(r), sp.decode(c), int(x)));
            GradedOperator::from_tensor_terms(sp, terms).unwrap()
        })
    }

    fn arb_homogeneous(n: usize) -> impl Strategy<Value = Op> {
        (arb_op(n, 1), 0usize..2).prop_map(|(x, d)| {
            let sp = x.space();
            let terms = x
                .tensor_terms()
                .into_iter()
                .filter(|(r, c, _)| (parity(r[0]) + parity(c[0])) % 2 == d);
            GradedOperator::from_tensor_terms(sp, terms).unwrap()
        })
    }

    proptest! {
        #[test]
        fn right_action_is_antihomomorphic(x in arb_op(1, 2), y in arb_op(1, 2), c in 0u32..16) {
            let v = Vector::from_code(Space::new(1, 2), c);
            let lhs = x.compose(&y).unwrap().apply_right(&v).unwrap();
            let rhs = y.apply_right(&x.apply_right(&v).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn tensor_terms_round_trip(x in arb_op(2, 2)) {
            let back = GradedOperator::from_tensor_terms(x.space(), x.tensor_terms()).unwrap();
            prop_assert_eq!(back, x);
        }

        #[test]
        fn embedding_is_koszul_coherent(x in arb_homogeneous(2), y in arb_homogeneous(2)) {
            let xy = x.tensor(&y).unwrap();
            prop_assert_eq!(xy.embed(&[1, 2], 2).unwrap(), xy.clone());
            let ex = x.embed(&[1], 2).unwrap();
            let ey = y.embed(&[2], 2).unwrap();
            prop_assert_eq!(ex.compose(&ey).unwrap(), xy.clone());
            // (1⊗Y)(X⊗1) = (-1)^{deg X deg Y} X⊗Y
            let s = x.degree().unwrap() * y.degree().unwrap();
            let yx = ey.compose(&ex).unwrap();
            prop_assert_eq!(yx, if s == 1 { xy.neg() } else { xy.clone() });
            // embedding in three slots commutes with restriction to the first two
            let three = xy.embed(&[1, 2], 3).unwrap();
            let viaid = xy.tensor(&id(2, 1)).unwrap();
            prop_assert_eq!(three, viaid);
        }

        #[test]
        fn sequential_embedding_matches_product(x in arb_homogeneous(1), y in arb_homogeneous(1), z in arb_homogeneous(1)) {
            let xyz = x.tensor(&y).unwrap().tensor(&z).unwrap();
            let a = x.embed(&[1], 3).unwrap();
            let b = y.embed(&[2], 3).unwrap();
            let c = z.embed(&[3], 3).unwrap();
            prop_assert_eq!(a.compose(&b).unwrap().compose(&c).unwrap(), xyz.clone());
            let yz = y.tensor(&z).unwrap().embed(&[2, 3], 3).unwrap();
            prop_assert_eq!(a.compose(&yz).unwrap(), xyz);
        }
    }
}

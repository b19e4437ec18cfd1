use super::points::*;
use super::*;
use crate::exact::{rat, ri};
use proptest::prelude::*;

fn mono(e: [u16; 3]) -> Poly {
    let mut p = Poly::zero();
    p.add_term(Monomial::from_exponents(&e), ri(1));
    p
}

fn int_matrix(n: usize, v: &[i64]) -> Vec<Vec<Rat>> {
    (0..n).map(|i| (0..n).map(|j| ri(v[i * n + j])).collect()).collect()
}

fn alternating(n: usize, v: &[i64]) -> Vec<Vec<Rat>> {
    let mut m = vec![vec![ri(0); n]; n];
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            m[i][j] = ri(v[k]);
            m[j][i] = ri(-v[k]);
            k += 1;
        }
    }
    m
}

#[test]
fn pfaffian_small_cases() {
    let m2 = alternating(2, &[3]);
    assert_eq!(pfaffian(&m2).unwrap(), ri(3));
    // a12 a34 - a13 a24 + a14 a23 with (a12, a13, a14, a23, a24, a34) = (1, 2, 3, 4, 5, 6)
    let m4 = alternating(4, &[1, 2, 3, 4, 5, 6]);
    assert_eq!(pfaffian(&m4).unwrap(), ri(6 - 10 + 12));
    let j = alternating(4, &[1, 0, 0, 0, 0, 1]);
    assert_eq!(pfaffian(&j).unwrap(), ri(1));
    assert_eq!(pfaffian(&alternating(3, &[1, 2, 3])), Err(InvariantError::OddSize));
    assert_eq!(pfaffian(&int_matrix(2, &[0, 1, 1, 0])), Err(InvariantError::NotAlternating));
    assert_eq!(pfaffian(&[vec![ri(0)], vec![ri(0)]]), Err(InvariantError::NotSquare));
}

proptest! {
    #[test]
    fn pfaffian_squares_to_determinant(n in prop::sample::select(vec![2usize, 4, 6]), v in prop::collection::vec(-4i64..=4, 15)) {
        let m = alternating(n, &v);
        let p = pfaffian(&m).unwrap();
        prop_assert_eq!(&p * &p, RatMat::from_rows(m).det());
    }
}

#[test]
fn wedge_sign_cases() {
    assert_eq!(wedge_sign(&[0], &[1]), 1);
    assert_eq!(wedge_sign(&[1], &[0]), -1);
    assert_eq!(wedge_sign(&[1, 2], &[0]), 1);
    assert_eq!(wedge_sign(&[0, 2], &[1]), -1);
    assert_eq!(wedge_sign(&[0, 1], &[1]), 0);
}

#[test]
fn wedge_pairing_of_twisted_point() {
    // p_23 paired with the standard 3 x 2 x 2 point picks out the first slice.
    let mut a = SplitTensor::new();
    a.insert((vec![], vec![1, 2]), ri(1));
    let mut b = SplitTensor::new();
    let w = w_322();
    for i in 0..3 {
        for j in 0..2 {
            for k in 0..2 {
                let c = w.get(0, &[vec![i], vec![j], vec![k]]);
                if !c.is_zero() {
                    b.insert((vec![j, k], vec![i]), c);
                }
            }
        }
    }
    let out = wedge_pair(3, &a, &b).unwrap();
    let expect: SplitTensor = [((vec![], vec![0, 0]), ri(-1)), ((vec![], vec![1, 1]), ri(1))].into_iter().collect();
    assert_eq!(out, expect);
    let mut bad = SplitTensor::new();
    bad.insert((vec![], vec![0, 1]), ri(1));
    assert!(matches!(wedge_pair(3, &a, &bad), Err(InvariantError::Shape { .. })));
}

#[test]
fn binary_discriminants() {
    let u = |i| Poly::var(i);
    let q = u(0).power(2).minus(&u(1).power(2));
    assert_eq!(disc_binary(&q, 2).unwrap(), ri(4));
    let c = u(0).power(2).times(&u(1)).minus(&u(0).times(&u(1).power(2)));
    assert_eq!(disc_binary(&c, 3).unwrap(), ri(1));
    // (u0 - u1)^2 (u0 + u1) has a double root.
    let d = u(0).minus(&u(1)).power(2).times(&u(0).plus(&u(1)));
    assert_eq!(disc_binary(&d, 3).unwrap(), ri(0));
    assert_eq!(disc_binary(&q, 3), Err(InvariantError::WrongDegree));
    assert_eq!(disc_binary(&u(2).power(2), 2), Err(InvariantError::WrongDegree));
}

#[test]
fn quadratic_discriminants() {
    let a = anchor_quaternary();
    assert_eq!(disc_quadratic_form(&a, 4, &a).unwrap(), ri(1));
    assert_eq!(disc_quadratic_form(&a.scale(&ri(2)), 4, &a).unwrap(), ri(16));
    let t = anchor_ternary();
    assert_eq!(disc_quadratic_form(&t, 3, &t).unwrap(), ri(1));
    let sq = Poly::var(0).power(2);
    assert_eq!(disc_quadratic_form(&t, 3, &sq), Err(InvariantError::DegenerateAnchor));
    assert_eq!(disc_quadratic_form(&sq, 3, &t).unwrap(), ri(0));
    assert_eq!(doubled_gram(&Poly::var(0).power(3), 2), Err(InvariantError::WrongDegree));
}

#[test]
fn determinant_of_pencil() {
    let m = pencil(&[int_matrix(2, &[1, 0, 0, 0]), int_matrix(2, &[0, 0, 0, 1])]);
    assert_eq!(det_poly(&m).unwrap(), Poly::var(0).times(&Poly::var(1)));
    assert_eq!(det_poly(&vec![vec![Poly::zero(); 2]; 1]), Err(InvariantError::NotSquare));
}

#[test]
fn sub_pfaffians_at_standard_points() {
    let l: Vec<Poly> = ternary_quadratic_basis().iter().map(|m| mono([m.exponent(0), m.exponent(1), m.exponent(2)])).collect();
    let q = pfaff_vector_53(w_wedge53().coeffs()).unwrap();
    let expect = [
        l[5].negate(),
        l[4].negate(),
        l[2].plus(&l[3].scale(&ri(2))).negate(),
        l[1].negate(),
        l[0].negate(),
    ];
    assert_eq!(q, expect);
    let q = pfaff_vector_53(w_wedge53_prime().coeffs()).unwrap();
    assert_eq!(q[2], l[2].plus(&l[3]).negate());
    assert!(pfaff_vector_53(&[ri(0)]).is_err());
}

#[test]
fn wedge53_invariant_values() {
    let y = phi_wedge53(w_wedge53().coeffs()).unwrap();
    assert_eq!(y.to_vec(), [0, 0, -2, 1, 0, 0].map(ri).to_vec());
    assert_eq!(p_wedge53(w_wedge53().coeffs()).unwrap(), ri(4));
    let y = phi_wedge53(w_wedge53_prime().coeffs()).unwrap();
    assert_eq!(y.to_vec(), [0, 0, -1, 1, 0, 0].map(ri).to_vec());
    assert_eq!(p_wedge53(w_wedge53_prime().coeffs()).unwrap(), ri(1));
}

#[test]
fn wedge43_quadratic_form() {
    let w = w_wedge43();
    assert_eq!(phi_sym2_of_wedge43(w.coeffs()).unwrap(), anchor_quaternary());
    assert_eq!(p_wedge43(w.coeffs()).unwrap(), ri(1));
}

#[test]
fn tensor_invariants_at_standard_points() {
    assert_eq!(p_222(w_222().coeffs()).unwrap(), ri(1));
    assert_eq!(p1_332(w_332().coeffs()).unwrap(), ri(1));
    assert_eq!(p_wedge42(w_wedge42().coeffs()).unwrap(), ri(1));
    assert_eq!(p_322(w_322().coeffs()).unwrap(), ri(1));
    let a = tensor3_slices(w_322().rep(), w_322().coeffs(), 0, [3, 2, 2], 0);
    assert_eq!(det_poly(&pencil(&a)).unwrap(), anchor_322());
}

#[test]
fn wedge43_plus4_literal_values() {
    // Values of the defining formulas as written; see the decision ledger.
    let w = w_wedge43_plus4();
    assert_eq!(p1_433(w.coeffs()).unwrap(), ri(-1));
    let u = |i| Poly::var(i);
    assert_eq!(phi3_433(w.coeffs()).unwrap(), u(0).times(&u(2)).minus(&u(1).power(2)));
    assert_eq!(p2_433(w.coeffs()).unwrap(), ri(-1));
    let mut x = w.coeffs().to_vec();
    let rep = rep_wedge43_plus4();
    for i in 0..4 {
        x[rep.position(1, &[vec![i]]).unwrap()] = ri(0);
    }
    assert_eq!(p1_433(&x).unwrap(), ri(0));
}

#[test]
fn wedge3_plus_332_values() {
    let w = w_wedge3_plus_332();
    let phi = phi_332(w.coeffs()).unwrap();
    for (k, v) in phi.iter().enumerate() {
        let (a, b, c) = (k / 9, (k / 3) % 3, k % 3);
        let distinct = a != b && b != c && a != c;
        assert_eq!(*v, ri(distinct as i64), "entry {k}");
    }
    assert_eq!(p2_332(w.coeffs()).unwrap(), ri(1));
}

#[test]
fn catalogue_lookup() {
    assert_eq!(primitive("p_322").unwrap().degree, 6);
    assert!(matches!(primitive("missing"), Err(InvariantError::UnknownPrimitive(_))));
    for s in catalogue() {
        assert_eq!(s.character.len(), s.rep.group().num_factors(), "{}", s.name);
    }
}

fn element(group: &GroupSpec, v: &[i64]) -> Vec<Vec<Vec<Rat>>> {
    let mut off = 0;
    group
        .factor_sizes()
        .iter()
        .map(|&n| {
            let m = int_matrix(n, &v[off..off + n * n]);
            off += n * n;
            m
        })
        .collect()
}

fn equivariance_case(s: &InvariantSpec, gv: &[i64], xv: &[i64]) -> Result<(), TestCaseError> {
    let g = element(s.rep.group(), gv);
    let chi = character_value(&g, &s.character);
    prop_assume!(!chi.is_zero());
    let x: Vec<Rat> = xv.iter().take(s.rep.dim()).map(|&v| ri(v)).collect();
    let gx = s.rep.act(&g, &x);
    let lhs = (s.eval)(&gx).unwrap();
    let rhs = chi * (s.eval)(&x).unwrap();
    prop_assert_eq!(lhs, rhs, "{}", s.name);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn invariants_are_relative_invariants(
        k in 0usize..9,
        gv in prop::collection::vec(-2i64..=2, 40),
        xv in prop::collection::vec(-2i64..=2, 40),
    ) {
        let s = &catalogue()[k];
        equivariance_case(s, &gv, &xv)?;
    }

    #[test]
    fn invariants_are_homogeneous(k in 0usize..9, t in 2i64..=3, xv in prop::collection::vec(-2i64..=2, 40)) {
        let s = &catalogue()[k];
        let x: Vec<Rat> = xv.iter().take(s.rep.dim()).map(|&v| ri(v)).collect();
        let tx: Vec<Rat> = x.iter().map(|v| v * ri(t)).collect();
        prop_assert_eq!((s.eval)(&tx).unwrap(), ri(t).power(s.degree) * (s.eval)(&x).unwrap());
    }
}

#[test]
fn character_of_scalars() {
    let g = vec![int_matrix(2, &[2, 0, 0, 2]), int_matrix(1, &[3])];
    assert_eq!(character_value(&g, &[1, -1]), rat(4, 3));
}

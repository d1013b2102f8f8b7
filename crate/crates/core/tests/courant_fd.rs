mod common;

use nijenhuis::algebra::product::torsion;
use nijenhuis::algebra::*;
use nijenhuis::courant_fd::*;
use nijenhuis::poly::int;
use nijenhuis::Error;
use rand::Rng;

fn affine_double() -> CourantStructure {
    drinfeld_double(&LieBialgebra::trivial(catalogue::affine_line()).unwrap())
}

/// `[ε1, ε2] = a ε1 + b ε2` on the 2-dimensional dual.
fn dual_bracket(a: i64, b: i64) -> BilinearOp {
    BilinearOp::from_entries(2, &[(1, 2, 1, a), (1, 2, 2, b), (2, 1, 1, -a), (2, 1, 2, -b)]).unwrap()
}

fn skew_adjoint_on_double(rng: &mut common::ChaCha8Rng) -> OneOneTensor {
    let a = common::random_tensor(rng, 2, 1);
    let (b, c) = (common::small(rng, 1), common::small(rng, 1));
    OneOneTensor::from_fn(4, |i, j| match (i < 2, j < 2) {
        (true, true) => a.entry(i, j).clone(),
        (false, false) => -a.entry(j - 2, i - 2).clone(),
        (true, false) if i != j - 2 => if i == 0 { b.clone() } else { -b.clone() },
        (false, true) if i - 2 != j => if j == 0 { c.clone() } else { -c.clone() },
        _ => int(0),
    })
}

fn torsion_free(cs: &CourantStructure, n: &OneOneTensor) -> bool {
    let d = cs.dim();
    (0..d).all(|i| (0..d).all(|j| torsion(&cs.op, n, &Vector::basis(d, i), &Vector::basis(d, j)).is_zero()))
}

#[test]
fn double_of_the_affine_line_is_courant() {
    let r = check_courant_axioms(&affine_double());
    assert!(r.passed(), "{r:?}");
}

#[test]
fn doubles_of_trivial_bialgebras_are_courant() {
    for (name, op) in catalogue::all() {
        if !op.is_skew() {
            continue;
        }
        let b = LieBialgebra::trivial(op).unwrap();
        assert!(b.check().passed(), "{name}");
        assert!(check_courant_axioms(&drinfeld_double(&b)).passed(), "{name}");
    }
}

/// On the 2-dimensional non-abelian algebra `ad_x` acts on `∧²g` by its
/// trace, which makes every linear map to `∧²g` a 1-cocycle.
#[test]
fn every_cobracket_on_the_affine_line_is_compatible() {
    for a in -2..=2 {
        for b in -2..=2 {
            let bi = LieBialgebra::new(catalogue::affine_line(), dual_bracket(a, b)).unwrap();
            assert!(bi.check().passed(), "({a},{b})");
            assert!(check_courant_axioms(&drinfeld_double(&bi)).passed(), "({a},{b})");
        }
    }
}

#[test]
fn cobracket_search_on_heisenberg_finds_both_verdicts() {
    let mut rng = common::rng(10);
    let lie: Vec<BilinearOp> = vec![
        catalogue::affine_line().direct_sum(&catalogue::abelian(1)),
        catalogue::heisenberg(),
        catalogue::sl2(),
    ];
    let (mut compatible, mut corrupted) = (0, 0);
    for _ in 0..60 {
        let p = common::random_invertible(&mut rng, 3);
        let dual = lie[rng.gen_range(0..lie.len())].transport(&p).unwrap();
        let bi = LieBialgebra::new(catalogue::heisenberg(), dual).unwrap();
        let r = bi.check();
        let axioms = check_courant_axioms(&drinfeld_double(&bi));
        assert_eq!(r.passed(), axioms.passed());
        if r.passed() {
            compatible += 1;
        } else {
            let w = axioms.witness.unwrap();
            assert_ne!(w.lhs, w.rhs);
            corrupted += 1;
        }
    }
    assert!(compatible > 0 && corrupted > 0, "{compatible} {corrupted}");
}

#[test]
fn corrupted_cobracket_fails_with_a_witness() {
    // δ(e1) = e1∧e2 gives δ([e1,e2]) = 0 but ad_e1 δ(e2) − ad_e2 δ(e1) = e3∧e2.
    let dual = BilinearOp::from_entries(3, &[(1, 2, 1, 1), (2, 1, 1, -1)]).unwrap();
    let bi = LieBialgebra::new(catalogue::heisenberg(), dual).unwrap();
    let r = check_courant_axioms(&drinfeld_double(&bi));
    assert!(!r.passed());
    let w = r.witness.unwrap();
    assert_eq!(w.indices.len(), 3);
    assert_ne!(w.lhs, w.rhs);
}

#[test]
fn paired_tensors_preserve_the_pairing_axioms() {
    let cs = affine_double();
    let mut rng = common::rng(11);
    let mut paired = 0;
    for _ in 0..300 {
        let n = skew_adjoint_on_double(&mut rng).add(&OneOneTensor::scalar(4, common::small(&mut rng, 2))).unwrap();
        assert!(is_paired(&n, &cs.pairing).unwrap().is_some());
        let r = check_delta_conditions(&cs, &n).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(pairing_axioms(&contract(&cs.op, &n).unwrap(), &cs.pairing).passed());
        paired += 1;
    }
    assert_eq!(paired, 300);
}

#[test]
fn unpaired_tensors_are_detected_consistently() {
    let cs = affine_double();
    let mut rng = common::rng(12);
    let mut failures = 0;
    for _ in 0..200 {
        let n = common::random_tensor(&mut rng, 4, 1);
        let r = check_delta_conditions(&cs, &n).unwrap();
        assert!(!r.certificate.contains("disagreement"), "{}", r.certificate);
        failures += usize::from(!r.passed());
    }
    assert!(failures > 0);
}

#[test]
fn skew_adjoint_nijenhuis_tensor_on_the_double() {
    let cs = affine_double();
    let mut rng = common::rng(13);
    let n = (0..5000)
        .map(|_| skew_adjoint_on_double(&mut rng))
        .find(|n| n.as_scalar().is_none() && torsion_free(&cs, n))
        .expect("search found a skew-adjoint Nijenhuis tensor");
    let r = check_n_squared(&cs, &n).unwrap();
    assert!(r.passed(), "{r:?}");
}

#[test]
fn n_squared_preconditions() {
    let cs = affine_double();
    assert!(matches!(check_n_squared(&cs, &OneOneTensor::identity(4)), Err(Error::Precondition(_))));
}

#[test]
fn identity_block_tensor_is_bialgebroid_nijenhuis() {
    let b = LieBialgebra::trivial(catalogue::affine_line()).unwrap();
    let r = bialgebroid_nijenhuis_conditions(&b, &BlockTensor::identity(2)).unwrap();
    assert!(r.passed(), "{r:?}");
}

#[test]
fn block_conditions_agree_with_the_definition() {
    let mut rng = common::rng(14);
    let b = LieBialgebra::trivial(catalogue::affine_line()).unwrap();
    let (mut pass, mut fail) = (0, 0);
    for _ in 0..300 {
        let n_e = common::random_tensor(&mut rng, 2, 1);
        let lam = common::small(&mut rng, 2);
        let n_estar = OneOneTensor::scalar(2, lam).sub(&n_e.transpose()).unwrap();
        let s = |rng: &mut common::ChaCha8Rng| {
            let v = common::small(rng, 1);
            OneOneTensor::new(vec![vec![int(0), v.clone()], vec![-v, int(0)]]).unwrap()
        };
        let lambda = if rng.gen_bool(0.5) { s(&mut rng) } else { OneOneTensor::zero(2) };
        let omega = if rng.gen_bool(0.5) { s(&mut rng) } else { OneOneTensor::zero(2) };
        let n = BlockTensor::new(n_e, lambda, omega, n_estar).unwrap();
        let conditions = bialgebroid_nijenhuis_conditions(&b, &n).unwrap();
        let definition = definition_bialgebroid_nijenhuis(&b, &n).unwrap();
        assert_eq!(conditions.passed(), definition.passed());
        if conditions.passed() {
            pass += 1;
            let c = contracted_bialgebra(&b, &n).unwrap();
            assert!(c.check().passed());
        } else {
            fail += 1;
        }
    }
    assert!(pass > 0 && fail > 0, "pass {pass} fail {fail}");
}

#[test]
fn dirac_nijenhuis_on_the_double() {
    let cs = affine_double();
    let l = Subspace::e(2);
    assert!(is_dirac(&cs, &l).unwrap().passed());
    assert!(is_dirac_nijenhuis(&cs, &l, &OneOneTensor::identity(4)).unwrap().passed());

    let mut rng = common::rng(15);
    let mut closure_failure = None;
    for _ in 0..500 {
        let n = common::random_tensor(&mut rng, 4, 1);
        let r = is_dirac_nijenhuis(&cs, &l, &n).unwrap();
        if let Some(w) = &r.witness {
            if w.identity == "u∘_N v ∈ L" {
                closure_failure = Some(r.clone());
                break;
            }
        }
    }
    assert!(closure_failure.is_some());

    let bad = Subspace::new(4, vec![Vector::from_ints(&[1, 0, 0, 0])]).unwrap();
    assert!(matches!(
        is_dirac_nijenhuis(&cs, &bad, &OneOneTensor::identity(4)),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn graph_of_skew_map_is_dirac_iff_closed() {
    let cs = affine_double();
    for v in -2..=2 {
        let omega = OneOneTensor::from_ints(&[&[0, v], &[-v, 0]]).unwrap();
        let l = Subspace::graph(&omega, false);
        let r = is_dirac(&cs, &l).unwrap();
        // every 2-cochain on a 2-dimensional algebra is closed
        assert!(r.passed(), "{v}: {r:?}");
    }
    let sym = OneOneTensor::from_ints(&[&[1, 0], &[0, 0]]).unwrap();
    let r = is_dirac(&cs, &Subspace::graph(&sym, false)).unwrap();
    assert!(!r.passed());
    assert_eq!(r.witness.unwrap().identity, "⟨u,v⟩ = 0");
}

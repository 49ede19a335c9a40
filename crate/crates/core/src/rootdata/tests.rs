use super::*;
use crate::composition::CompositionAlgebra;
use crate::jordan::JordanAlgebra;
use crate::rational::int;
use crate::sample;
use alloc::sync::Arc;
use num_traits::Zero;

fn build(kind: CartanType, rank: usize, node: Option<usize>) -> ChevalleyAlgebra {
    ChevalleyAlgebra::build(kind, rank, node).unwrap()
}

fn ones(r: usize) -> Vec<Rational> {
    vec![int(1); r]
}

#[test]
fn dimensions() {
    assert_eq!(build_split_lie(CartanType::C, 2).unwrap().dim(), 10);
    assert_eq!(build_split_lie(CartanType::A, 3).unwrap().dim(), 15);
    assert_eq!(build_split_lie(CartanType::B, 3).unwrap().dim(), 21);
    assert_eq!(build_split_lie(CartanType::D, 4).unwrap().dim(), 28);
}

#[test]
fn small_algebras_pass_all_suites() {
    for (kind, rank) in [(CartanType::C, 2), (CartanType::A, 3), (CartanType::B, 3), (CartanType::C, 3), (CartanType::D, 4)] {
        let g = build_split_lie(kind, rank).unwrap();
        for r in [
            g.check_antisymmetry(),
            g.check_jacobi(&g.all_triples()),
            g.check_grading(),
            g.check_sl2(),
            g.check_abelian_radicals(),
            g.check_killing_pairing(),
            g.check_killing_invariance(&g.sampled_triples(1, 2000)),
        ] {
            assert!(r.passed, "{kind:?}{rank}: {r:?}");
        }
    }
}

#[test]
fn constants_are_bounded_by_root_strings() {
    for (kind, rank) in [(CartanType::B, 3), (CartanType::C, 3), (CartanType::E7, 7)] {
        let ch = build(kind, rank, None);
        let roots = ch.system.positive_roots();
        for ((a, b), v) in ch.constants.iter() {
            let p = ch.system.string_down(&roots[a], &roots[b]);
            assert_eq!(v.abs(), p + 1);
        }
        assert!(ch.constants.max_abs() <= 3);
    }
}

#[test]
fn parabolic_examples() {
    let ch = build(CartanType::C, 3, None);
    assert_eq!(ch.table_row(), (6, 3, 1));
    let ch = build(CartanType::A, 3, None);
    assert_eq!(ch.table_row(), (4, 2, 2));
    let ch = build(CartanType::B, 3, None);
    assert_eq!(ch.table_row(), (5, 2, 3));
    let ch = build(CartanType::D, 4, None);
    assert_eq!(ch.table_row(), (6, 2, 4));
    let ch = build(CartanType::D, 6, Some(6));
    assert_eq!(ch.table_row(), (15, 3, 4));
}

#[test]
fn non_abelian_radical_is_rejected() {
    let sys = RootSystem::new(CartanType::C, 3).unwrap();
    assert_eq!(parabolic(&sys, 1), Err(Error::NonAbelianRadical { node: 1, coefficient: 2 }));
    assert!(default_node(CartanType::A, 4).is_err());
}

#[test]
fn greedy_set_is_strongly_orthogonal_and_maximal() {
    for (kind, rank, node) in [(CartanType::C, 3, None), (CartanType::A, 5, None), (CartanType::D, 6, Some(6))] {
        let ch = build(kind, rank, node);
        let roots = ch.system.positive_roots();
        let s = &ch.parabolic.strongly_orthogonal;
        for &a in s {
            for &b in s {
                if a != b {
                    assert!(strongly_orthogonal(&ch.system, &roots[a], &roots[b]));
                }
            }
        }
        for &k in &ch.parabolic.n_roots {
            if !s.contains(&k) {
                assert!(s.iter().any(|&b| !strongly_orthogonal(&ch.system, &roots[k], &roots[b])));
            }
        }
    }
}

#[test]
fn jordan_from_roots_has_frame() {
    let ch = build(CartanType::C, 3, None);
    let t = jordan_from_roots(&ch, &ones(3)).unwrap();
    let e = t.identity().to_vec();
    for k in 0..t.dim() {
        assert_eq!(t.mul(&e, &t.basis(k)), t.basis(k));
    }
    for i in 0..3 {
        for j in 0..3 {
            let p = t.mul(t.idempotent(i), t.idempotent(j));
            if i == j {
                assert_eq!(p, t.idempotent(i));
            } else {
                assert!(p.iter().all(|c| c.is_zero()));
            }
        }
    }
}

#[test]
fn pierce_from_roots_matches_eigenspaces() {
    for (kind, rank, node) in [(CartanType::C, 3, None), (CartanType::A, 5, None), (CartanType::B, 3, None)] {
        let ch = build(kind, rank, node);
        let t = jordan_from_roots(&ch, &ones(ch.parabolic.degree())).unwrap();
        let eig = t.pierce();
        for (key, roots) in ch.pierce_roots() {
            assert_eq!(eig.dim(key.0, key.1), roots.len());
        }
        assert_eq!(eig.total_dim(), t.dim());
    }
}

#[test]
fn q_forms_match_jordan_squares() {
    for (kind, rank, node) in [(CartanType::C, 3, None), (CartanType::A, 5, None), (CartanType::B, 3, None), (CartanType::D, 6, Some(6))] {
        let ch = build(kind, rank, node);
        let r = ch.parabolic.degree();
        let t = jordan_from_roots(&ch, &ones(r)).unwrap();
        for q in q_forms(&ch, &ones(r)).unwrap() {
            let vecs: Vec<Vec<Rational>> = q.basis.iter().map(|&p| t.basis(p)).collect();
            assert_eq!(t.pierce_form(q.i, q.j, &vecs).unwrap(), q.gram, "{kind:?}{rank} ({}, {})", q.i, q.j);
        }
    }
}

#[test]
fn composition_identity_uses_the_doubled_product() {
    let ch = build(CartanType::C, 3, None);
    let t = jordan_from_roots(&ch, &ones(3)).unwrap();
    let forms = q_forms(&ch, &ones(3)).unwrap();
    let get = |i: usize, j: usize| forms.iter().find(|q| (q.i, q.j) == (i.min(j), i.max(j))).unwrap();
    let mut rng = sample::rng(12);
    let n = t.dim();
    for _ in 0..20 {
        let (i, j, l) = (0, 1, 2);
        let x = get(i, l).embed(&sample::vector(&mut rng, get(i, l).basis.len()), n);
        let y = get(i, j).embed(&sample::vector(&mut rng, get(i, j).basis.len()), n);
        let xy: Vec<Rational> = t.mul(&x, &y).into_iter().map(|c| c * int(2)).collect();
        let lhs = get(j, l).eval(&get(j, l).restrict(&xy));
        let rhs = get(i, l).eval(&get(i, l).restrict(&x)) * get(i, j).eval(&get(i, j).restrict(&y));
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn witt_planes() {
    for (kind, rank, node, d) in [(CartanType::A, 5, None, 2), (CartanType::B, 3, None, 3), (CartanType::D, 6, Some(6), 4)] {
        let ch = build(kind, rank, node);
        for q in q_forms(&ch, &ones(ch.parabolic.degree())).unwrap() {
            let w = witt_decomposition(&q.gram).unwrap();
            assert_eq!(w.planes.len(), d / 2);
            for (v, u) in &w.planes {
                assert!(q.eval(v).is_zero() && q.eval(u).is_zero());
                assert_eq!(crate::linalg::bilinear(&q.gram, v, u), int(1));
            }
        }
    }
}

#[test]
fn coordinatize_c3_gives_rational_hermitian_matrices() {
    let ch = build(CartanType::C, 3, None);
    let c = coordinatize(&ch).unwrap();
    let h3 = JordanAlgebra::hermitian(3, Arc::new(CompositionAlgebra::field())).unwrap();
    assert_eq!(c.target.table(), h3.table());
}

#[test]
fn coordinatize_c2_gives_h2() {
    let ch = build(CartanType::C, 2, None);
    let c = coordinatize(&ch).unwrap();
    let h2 = JordanAlgebra::hermitian(2, Arc::new(CompositionAlgebra::field())).unwrap();
    assert_eq!(c.target.table(), h2.table());
}

#[test]
fn coordinatize_a5_gives_split_binarions() {
    let ch = build(CartanType::A, 5, None);
    let c = coordinatize(&ch).unwrap();
    let d = c.composition.unwrap();
    assert_eq!(d.dim(), 2);
    assert!(d.is_associative());
    let isotropic = [[1, 1], [1, -1], [0, 1], [1, 0]]
        .iter()
        .any(|v| d.norm(&[int(v[0]), int(v[1])]).is_zero());
    assert!(isotropic);
}

#[test]
fn coordinatize_rank_two_and_larger_cases() {
    let c = coordinatize(&build(CartanType::D, 4, None)).unwrap();
    assert!(matches!(c.target.kind(), crate::jordan::JordanKind::Quadratic { gram } if gram.len() == 4));
    let c = coordinatize(&build(CartanType::D, 6, Some(6))).unwrap();
    assert_eq!(c.composition.unwrap().dim(), 4);
    coordinatize(&build(CartanType::C, 4, None)).unwrap();
    coordinatize(&build(CartanType::A, 7, None)).unwrap();
}

#[test]
fn cross_validation_small_types() {
    for (kind, rank) in [(CartanType::C, 2), (CartanType::A, 3), (CartanType::B, 3), (CartanType::C, 3)] {
        let ch = build(kind, rank, None);
        let c = coordinatize(&ch).unwrap();
        let x = cross_validate(&ch, &c).unwrap();
        assert!(x.report.passed, "{kind:?}{rank}: {:?}", x.report);
    }
}

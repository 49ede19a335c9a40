use super::*;
use crate::composition::CompositionAlgebra;
use crate::jordan::jordan_norm;
use crate::linalg;
use crate::rational::{frac, int};
use crate::sample::{self, SampleRng};
use alloc::collections::BTreeMap;
use rand::Rng;

fn herm(r: usize, d: CompositionAlgebra) -> Arc<JordanAlgebra> {
    Arc::new(JordanAlgebra::hermitian(r, Arc::new(d)).unwrap())
}

fn division(dim: usize) -> CompositionAlgebra {
    let steps = dim.trailing_zeros() as usize;
    CompositionAlgebra::build(dim, &vec![int(-1); steps]).unwrap()
}

fn quad(gram: Vec<Vec<Rational>>) -> Arc<JordanAlgebra> {
    Arc::new(JordanAlgebra::quadratic(gram).unwrap())
}

fn random(j: &Arc<JordanAlgebra>, rng: &mut SampleRng) -> JordanElement {
    JordanElement::new(j, sample::vector(rng, j.dim())).unwrap()
}

/// Rank by plain Gaussian elimination.
fn matrix_rank(mut m: Vec<Vec<Rational>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &m[rank][c];
                for k in 0..cols {
                    let t = &f * &m[rank][k];
                    m[r][k] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Low-rank elements: sums of `k` rank-one terms `v vᵀ` in `H_r(Q)`.
fn low_rank_rational(j: &Arc<JordanAlgebra>, r: usize, k: usize, rng: &mut SampleRng) -> JordanElement {
    let mut p = vec![vec![Rational::zero(); r]; r];
    for _ in 0..k {
        let v = sample::vector(rng, r);
        let c = int(sample::nonzero_int(rng, 3));
        for a in 0..r {
            for b in 0..r {
                p[a][b] += &c * &v[a] * &v[b];
            }
        }
    }
    let m: DMatrix = p.iter().map(|row| row.iter().map(|c| vec![c.clone()]).collect()).collect();
    JordanElement::new(j, j.from_matrix(&m)).unwrap()
}

/// `P = A B` with inner dimension `k`, read as an element of `H_r(Q ⊕ Q)`.
fn low_rank_split(j: &Arc<JordanAlgebra>, r: usize, k: usize, rng: &mut SampleRng) -> (JordanElement, Vec<Vec<Rational>>) {
    let a: Vec<Vec<Rational>> = (0..r).map(|_| sample::vector(rng, k)).collect();
    let b: Vec<Vec<Rational>> = (0..k).map(|_| sample::vector(rng, r)).collect();
    let p: Vec<Vec<Rational>> = (0..r)
        .map(|x| (0..r).map(|y| (0..k).map(|t| &a[x][t] * &b[t][y]).sum()).collect())
        .collect();
    (from_pair_matrix(j, &p), p)
}

/// With `i² = 1`, `x + y i ↦ (x + y, x − y)`, and `X ↦ P` with `P_ab = x + y`.
fn from_pair_matrix(j: &Arc<JordanAlgebra>, p: &[Vec<Rational>]) -> JordanElement {
    let r = p.len();
    let m: DMatrix = (0..r)
        .map(|a| {
            (0..r)
                .map(|b| {
                    let (s, t) = (&p[a][b], &p[b][a]);
                    vec![(s + t) / int(2), (s - t) / int(2)]
                })
                .collect()
        })
        .collect();
    JordanElement::new(j, j.from_matrix(&m)).unwrap()
}

fn to_pair_matrix(x: &JordanElement) -> Vec<Vec<Rational>> {
    let r = x.algebra().degree();
    (0..r).map(|a| (0..r).map(|b| {
        let e = x.entry(a, b);
        &e[0] + &e[1]
    }).collect()).collect()
}

fn diagonal_of(j: &Arc<JordanAlgebra>, res: &RankResult) -> JordanElement {
    match j.kind() {
        JordanKind::Hermitian { .. } => JordanElement::diagonal(j, &res.diagonal).unwrap(),
        JordanKind::Quadratic { gram } => JordanElement::quadratic(
            j,
            res.diagonal[0].clone(),
            res.diagonal[1].clone(),
            &vec![Rational::zero(); gram.len()],
        )
        .unwrap(),
    }
}

#[test]
fn split_complex_unit_squares_to_one() {
    let d = CompositionAlgebra::split(2).unwrap();
    assert_eq!(d.mul(&d.basis(1), &d.basis(1)), d.one());
}

#[test]
fn transvections_preserve_norm() {
    let mut rng = sample::rng(11);
    let algebras = vec![
        herm(3, CompositionAlgebra::field()),
        herm(3, CompositionAlgebra::split(2).unwrap()),
        herm(3, division(4)),
        herm(3, CompositionAlgebra::split(8).unwrap()),
        herm(3, division(8)),
        herm(4, CompositionAlgebra::field()),
        quad(linalg::identity(3)),
        quad(vec![vec![int(0), int(1)], vec![int(1), int(0)]]),
    ];
    for j in &algebras {
        let udim = match j.kind() {
            JordanKind::Hermitian { d, .. } => d.dim(),
            JordanKind::Quadratic { gram } => gram.len(),
        };
        for _ in 0..20 {
            let x = random(j, &mut rng);
            let r = j.degree();
            let i = rng.gen_range(0..r);
            let jj = (i + 1 + rng.gen_range(0..r - 1)) % r;
            let t = Transvection { i, j: jj, u: sample::vector(&mut rng, udim) };
            let y = apply_transvection(&t, &x).unwrap();
            assert_eq!(jordan_norm(&y), jordan_norm(&x));
            assert_eq!(apply_transvection_right(&t, &x).unwrap(), y);
        }
    }
}

#[test]
fn octonion_parenthesizations_agree() {
    let mut rng = sample::rng(12);
    for d in [CompositionAlgebra::split(8).unwrap(), division(8)] {
        let j = herm(3, d);
        for _ in 0..50 {
            let x = random(&j, &mut rng);
            let t = Transvection { i: 0, j: 2, u: sample::vector(&mut rng, 8) };
            assert_eq!(apply_transvection(&t, &x).unwrap(), apply_transvection_right(&t, &x).unwrap());
        }
    }
}

#[test]
fn quadratic_transvection_formula() {
    let j = quad(linalg::identity(2));
    let x = JordanElement::quadratic(&j, int(2), int(3), &[int(1), int(0)]).unwrap();
    let t = Transvection { i: 0, j: 1, u: vec![int(0), int(1)] };
    let y = apply_transvection(&t, &x).unwrap();
    // b + a Q(u) + B(u, v) = 3 + 2 + 0, v + a u = (1, 2)
    assert_eq!(y, JordanElement::quadratic(&j, int(2), int(5), &[int(1), int(2)]).unwrap());
}

#[test]
fn diagonalization_replays() {
    let mut rng = sample::rng(13);
    let algebras = vec![
        herm(2, CompositionAlgebra::field()),
        herm(3, CompositionAlgebra::split(2).unwrap()),
        herm(3, division(4)),
        herm(3, CompositionAlgebra::split(8).unwrap()),
        herm(3, division(8)),
        quad(linalg::identity(3)),
        quad(vec![vec![int(0), int(1)], vec![int(1), int(0)]]),
    ];
    for j in &algebras {
        for k in 0..30 {
            let x = if k % 3 == 0 {
                JordanElement::new(j, sample::sparse_vector(&mut rng, j.dim(), 0.2)).unwrap()
            } else {
                random(j, &mut rng)
            };
            let res = diagonalize(&x);
            let y = replay(&res.log, &x).unwrap();
            assert_eq!(y, diagonal_of(j, &res));
            assert_eq!(jordan_norm(&y), jordan_norm(&x));
        }
    }
}

#[test]
fn rank_matches_rational_matrix_rank() {
    let mut rng = sample::rng(14);
    for r in 2..=4 {
        let j = herm(r, CompositionAlgebra::field());
        for k in 0..=r {
            for _ in 0..5 {
                let x = low_rank_rational(&j, r, k, &mut rng);
                let p: Vec<Vec<Rational>> = (0..r).map(|a| (0..r).map(|b| x.entry(a, b)[0].clone()).collect()).collect();
                assert_eq!(diagonalize(&x).rank, matrix_rank(p));
            }
        }
    }
}

#[test]
fn rank_matches_split_complex_matrix_rank() {
    let mut rng = sample::rng(15);
    for r in 2..=4 {
        let j = herm(r, CompositionAlgebra::split(2).unwrap());
        for k in 0..=r {
            for _ in 0..5 {
                let (x, p) = low_rank_split(&j, r, k, &mut rng);
                assert_eq!(to_pair_matrix(&x), p);
                assert_eq!(diagonalize(&x).rank, matrix_rank(p));
            }
        }
    }
}

#[test]
fn split_nilpotent_has_rank_one() {
    let j = herm(2, CompositionAlgebra::split(2).unwrap());
    let mut upper = BTreeMap::new();
    upper.insert((0, 1), vec![int(1), int(1)]);
    let x = JordanElement::hermitian(&j, &[int(0), int(0)], &upper).unwrap();
    assert!(x.square().is_zero());
    let res = diagonalize(&x);
    assert_eq!(res.rank, 1);
    assert!(!res.log.is_empty());
}

#[test]
fn representatives() {
    let j = herm(2, CompositionAlgebra::field());
    let x = JordanElement::diagonal(&j, &[int(2), int(3)]).unwrap();
    let rep = orbit_representative(&j, &diagonalize(&x)).unwrap();
    assert_eq!(rep, JordanElement::diagonal(&j, &[int(1), int(6)]).unwrap());

    let j3 = herm(3, CompositionAlgebra::field());
    let y = JordanElement::diagonal(&j3, &[int(0), int(5), int(0)]).unwrap();
    let res = diagonalize(&y);
    assert_eq!(res.rank, 1);
    let rep = orbit_representative(&j3, &res).unwrap();
    assert_eq!(rep, JordanElement::diagonal(&j3, &[int(1), int(0), int(0)]).unwrap());
}

#[test]
fn full_rank_representative_keeps_norm() {
    let mut rng = sample::rng(16);
    let j = herm(3, division(8));
    for _ in 0..10 {
        let x = random(&j, &mut rng);
        let res = diagonalize(&x);
        if res.rank == 3 {
            let rep = orbit_representative(&j, &res).unwrap();
            assert_eq!(jordan_norm(&rep), jordan_norm(&x));
        }
    }
}

#[test]
fn torus_scaling_is_pierce_graded() {
    let j = herm(3, CompositionAlgebra::field());
    let mut upper = BTreeMap::new();
    upper.insert((0, 1), vec![int(1)]);
    upper.insert((1, 2), vec![int(1)]);
    upper.insert((0, 2), vec![int(1)]);
    let x = JordanElement::hermitian(&j, &[int(1), int(1), int(1)], &upper).unwrap();
    let y = torus_scale(1, &int(2), &x).unwrap();
    assert_eq!(y.diag(1), int(4));
    assert_eq!(y.diag(0), int(1));
    assert_eq!(y.entry(0, 1), vec![int(2)]);
    assert_eq!(y.entry(1, 2), vec![int(2)]);
    assert_eq!(y.entry(0, 2), vec![int(1)]);
    assert!(torus_scale(0, &int(0), &x).is_err());
    assert!(torus_scale(3, &int(1), &x).is_err());

    let q = quad(linalg::identity(2));
    let v = JordanElement::quadratic(&q, int(1), int(1), &[int(1), int(1)]).unwrap();
    let w = torus_scale(0, &frac(1, 2), &v).unwrap();
    assert_eq!(w, JordanElement::quadratic(&q, frac(1, 4), int(1), &[frac(1, 2), frac(1, 2)]).unwrap());
}

#[test]
fn rank_is_lower_in_torus_limits() {
    let mut rng = sample::rng(17);
    let j = herm(3, division(4));
    for _ in 0..20 {
        let x = random(&j, &mut rng);
        let rank = diagonalize(&x).rank;
        for i in 0..3 {
            assert_eq!(diagonalize(&torus_scale(i, &frac(1, 7), &x).unwrap()).rank, rank);
            // t → 0 removes row and column i
            let mut limit = x.coords().to_vec();
            limit[i] = Rational::zero();
            for k in (0..3).filter(|&k| k != i) {
                let off = j.entry_offset(i.min(k), i.max(k));
                limit[off..off + 4].iter_mut().for_each(|c| *c = Rational::zero());
            }
            let limit = JordanElement::new(&j, limit).unwrap();
            assert!(diagonalize(&limit).rank <= rank);
        }
    }
}

#[test]
fn local_class_examples() {
    let s = |a: Rational, p: Place| format!("{}", local_class(&a, p).unwrap());
    assert_eq!(s(int(-3), Place::Infinity), "-");
    assert_eq!(s(frac(1, 7), Place::Infinity), "+");
    assert_eq!(s(int(2), Place::Prime(3)), "v0,nqr");
    assert_eq!(s(int(3), Place::Prime(3)), "v1,qr");
    assert_eq!(s(int(-1), Place::Prime(5)), "v0,qr");
    assert_eq!(s(int(3), Place::Prime(2)), "v0,u3");
    assert_eq!(s(frac(3, 8), Place::Prime(2)), "v1,u3");
    assert_eq!(s(frac(1, 5), Place::Prime(2)), "v0,u5");
    assert_eq!(s(int(-1), Place::Prime(2)), "v0,u7");
    assert_eq!(s(frac(4, 9), Place::Prime(3)), "v0,qr");
}

#[test]
fn local_class_errors() {
    assert!(local_class(&int(0), Place::Prime(3)).is_err());
    assert!(local_class(&int(2), Place::Prime(9)).is_err());
    assert!(Place::parse("4").is_err());
    assert_eq!(Place::parse("inf").unwrap(), Place::Infinity);
    assert_eq!(Place::parse("11").unwrap(), Place::Prime(11));
}

#[test]
fn squares_share_every_class() {
    let mut rng = sample::rng(18);
    let places = [Place::Infinity, Place::Prime(2), Place::Prime(3), Place::Prime(5), Place::Prime(7)];
    for _ in 0..100 {
        let a = sample::rational(&mut rng);
        let c = sample::rational(&mut rng);
        if a.is_zero() || c.is_zero() {
            continue;
        }
        let b = &a * &c * &c;
        for &p in &places {
            assert_eq!(local_class(&a, p).unwrap(), local_class(&b, p).unwrap());
        }
    }
}

#[test]
fn invalid_transvections() {
    let j = herm(2, CompositionAlgebra::field());
    let x = JordanElement::identity(&j);
    assert!(apply_transvection(&Transvection { i: 0, j: 0, u: vec![int(1)] }, &x).is_err());
    assert!(apply_transvection(&Transvection { i: 0, j: 2, u: vec![int(1)] }, &x).is_err());
    assert!(apply_transvection(&Transvection { i: 0, j: 1, u: vec![int(1), int(1)] }, &x).is_err());
}

#[test]
fn trivial_cases() {
    let j = herm(3, CompositionAlgebra::field());
    let zero = JordanElement::zero(&j);
    let res = diagonalize(&zero);
    assert_eq!((res.rank, res.log.len()), (0, 0));

    let x = JordanElement::diagonal(&j, &[int(1), int(1), int(0)]).unwrap();
    let res = diagonalize(&x);
    assert_eq!(res.rank, 2);
    assert_eq!(res.diagonal, vec![int(1), int(1), int(0)]);

    let mut rng = sample::rng(19);
    let y = random(&j, &mut rng);
    let t = Transvection { i: 0, j: 1, u: vec![int(0)] };
    assert_eq!(apply_transvection(&t, &y).unwrap(), y);

    let e1 = JordanElement::idempotent(&j, 0).unwrap();
    assert_eq!(torus_scale(0, &int(3), &e1).unwrap(), e1.scale(&int(9)));
    assert_eq!(torus_scale(2, &int(3), &x).unwrap(), x);
}

#[test]
fn norm_vanishes_exactly_below_full_rank() {
    let mut rng = sample::rng(20);
    let j = herm(3, CompositionAlgebra::field());
    for k in 0..=3 {
        for _ in 0..5 {
            let x = low_rank_rational(&j, 3, k, &mut rng);
            let res = diagonalize(&x);
            assert_eq!(jordan_norm(&x).is_zero(), res.rank < 3);
        }
    }
}

#[test]
fn rank_is_transvection_invariant() {
    let mut rng = sample::rng(21);
    let j = herm(3, CompositionAlgebra::split(8).unwrap());
    for k in 0..30 {
        let x = JordanElement::new(&j, sample::sparse_vector(&mut rng, j.dim(), 0.1 + 0.02 * k as f64)).unwrap();
        let t = Transvection { i: k % 3, j: (k + 1) % 3, u: sample::vector(&mut rng, 8) };
        let y = apply_transvection(&t, &x).unwrap();
        assert_eq!(diagonalize(&y).rank, diagonalize(&x).rank);
    }
}

#[test]
fn valuation_parity_separates() {
    for p in [2u64, 3, 5, 7, 11] {
        let one = local_class(&int(1), Place::Prime(p)).unwrap();
        assert_eq!(one, local_class(&int(4), Place::Prime(p)).unwrap());
        assert_ne!(one, local_class(&int(p as i64), Place::Prime(p)).unwrap());
    }
}

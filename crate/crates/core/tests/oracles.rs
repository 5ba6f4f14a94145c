//! Library results against slow, independent computations.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use shtuka_core::adlv::{enumerate_window_lattices, schubert_cell_counts, Stratum, DEFAULT_BUDGET};
use shtuka_core::engine::FieldMatrix;
use shtuka_core::rational::q;
use shtuka_core::root_data::{AffineWeylElement, Coweight, RootDatum, WeylElement};
use shtuka_core::{Field, FieldElement, Ring, Series, Q};

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut v = p.clone();
            v.insert(pos, n - 1);
            out.push(v);
        }
    }
    out
}

fn sign(p: &[usize]) -> bool {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    inv % 2 == 0
}

#[test]
fn determinant_matches_leibniz() {
    let f = Field::prime(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for r in 1..=4 {
        for _ in 0..10 {
            let m = FieldMatrix::from_fn(f.clone(), r, |_, _| {
                let lo = rng.random_range(-2..=1);
                let coeffs = (0..3).map(|_| FieldElement(rng.random_range(0..3))).collect();
                Series::exact(lo, coeffs)
            })
            .unwrap();
            let mut leibniz = Series::zero();
            for p in permutations(r) {
                let mut term = Series::one(&f);
                for (i, &j) in p.iter().enumerate() {
                    term = term.mul(m.get(i, j), &f);
                }
                leibniz = if sign(&p) { leibniz.add(&term, &f) } else { leibniz.sub(&term, &f) };
            }
            assert_eq!(m.det(), leibniz);
        }
    }
}

#[test]
fn geometric_series_inverse() {
    let f = Field::prime(5).unwrap();
    let one = f.one();
    let s = Series::exact(0, vec![one, f.neg(one)]);
    let inv = s.invert(&f, 12).unwrap();
    for k in 0..12 {
        assert_eq!(inv.coeff(k), Some(one));
    }
    assert_eq!(inv.prec(), 12);
}

/// `F_2[z]`-submodules of `(F_2[z]/z²)²`, as sets of 4-bit vectors `(a0, a1, b0, b1)`
/// with `z·(a0 + a1 z) = a0 z`.
fn submodules_f2() -> usize {
    let times_z = |v: u32| -> u32 { ((v & 1) << 1) | ((v & 4) << 1) };
    let mut count = 0;
    for set in 0u32..(1 << 16) {
        if set & 1 == 0 {
            continue;
        }
        let members: Vec<u32> = (0..16).filter(|v| set >> v & 1 == 1).collect();
        let closed = members.iter().all(|&a| {
            set >> times_z(a) & 1 == 1 && members.iter().all(|&b| set >> (a ^ b) & 1 == 1)
        });
        if closed {
            count += 1;
        }
    }
    count
}

#[test]
fn window_matches_submodule_enumeration() {
    let f = Field::prime(2).unwrap();
    let n = enumerate_window_lattices(2, 1, &f, DEFAULT_BUDGET).unwrap().count();
    assert_eq!(n, submodules_f2());
}

#[test]
fn schubert_cells_have_exact_sizes() {
    // |K z^(a,b) K / K| = Q^{a-b-1}(Q+1) over F_Q for a > b
    let t = schubert_cell_counts(2, 2, 2, 2, &[1, 2], DEFAULT_BUDGET).unwrap();
    for m in [1u32, 2] {
        let qm = 1u64 << m;
        for a in -2i64..=2 {
            for b in -2..=a {
                let d = (a - b) as u32;
                let expected = if d == 0 { 1 } else { qm.pow(d - 1) * (qm + 1) };
                assert_eq!(t.count(m, &Stratum::Hodge(Coweight(vec![a, b]))), Some(expected));
            }
        }
    }
}

fn gl_alcove_point(n: usize) -> Vec<Q> {
    (0..n).map(|i| q(-((n - 1 - i) as i64), n as i64)).collect()
}

/// Whether `v` lies in the open base alcove `{-1 < v_i - v_j < 0 for i < j}`.
fn in_alcove(v: &[Q]) -> bool {
    let n = v.len();
    (0..n).all(|i| (i + 1..n).all(|j| v[i] - v[j] < q(0, 1) && v[i] - v[j] > q(-1, 1)))
}

fn gl_affine_generators(n: usize) -> Vec<AffineWeylElement> {
    let datum = RootDatum::gl(n);
    let mut gens: Vec<AffineWeylElement> =
        (0..n - 1).map(|i| AffineWeylElement::finite_element(datum.simple_reflection(i))).collect();
    let mut theta = vec![0; n];
    theta[0] = 1;
    theta[n - 1] = -1;
    let s_theta = WeylElement::reflection(&theta, &theta);
    let minus: Vec<i64> = theta.iter().map(|x| -x).collect();
    gens.push(AffineWeylElement::new(Coweight(minus), s_theta));
    gens
}

/// Word lengths in `s_0, …, s_{n-1}` of the affine Weyl group, up to `max`.
fn bfs_lengths(n: usize, max: u64) -> BTreeMap<AffineWeylElement, u64> {
    let gens = gl_affine_generators(n);
    let mut seen = BTreeMap::new();
    let id = AffineWeylElement::identity(n);
    seen.insert(id.clone(), 0);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        let l = seen[&x];
        if l == max {
            continue;
        }
        for s in &gens {
            let y = x.mul(s);
            if !seen.contains_key(&y) {
                seen.insert(y.clone(), l + 1);
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Length-zero elements with translation in `{-1,0,1}^n`, found geometrically.
fn omega_elements(n: usize) -> Vec<AffineWeylElement> {
    let v0 = gl_alcove_point(n);
    let mut out = Vec::new();
    let mut lambdas = vec![vec![]];
    for _ in 0..n {
        lambdas = lambdas
            .into_iter()
            .flat_map(|l: Vec<i64>| (-1..=1).map(move |x| [l.clone(), vec![x]].concat()))
            .collect();
    }
    for lambda in &lambdas {
        for p in permutations(n) {
            let x = AffineWeylElement::new(Coweight(lambda.clone()), WeylElement::from_permutation(&p));
            if in_alcove(&x.apply(&v0)) {
                out.push(x);
            }
        }
    }
    out
}

#[test]
fn affine_length_matches_word_length() {
    for n in [2usize, 3] {
        let datum = RootDatum::gl(n);
        let omega = omega_elements(n);
        assert!(omega.len() >= n);
        let lengths = bfs_lengths(n, 6);
        for (u, &l) in &lengths {
            for tau in &omega {
                assert_eq!(u.mul(tau).length(&datum).unwrap(), l);
                assert_eq!(tau.mul(u).length(&datum).unwrap(), l);
            }
        }
    }
}

#[test]
fn weyl_orbits_match_reflection_closure() {
    let b2 = RootDatum::new(2, vec![vec![1, -1], vec![0, 1]], vec![vec![1, -1], vec![0, 2]]).unwrap();
    for datum in [RootDatum::gl(3), b2] {
        let n = datum.rank();
        for lambda in [vec![2, 1, 0], vec![1, 0, 0], vec![3, -1, 2]] {
            let lambda = Coweight(lambda[..n].to_vec());
            let mut seen = BTreeSet::from([lambda.clone()]);
            let mut stack = vec![lambda.clone()];
            while let Some(x) = stack.pop() {
                for i in 0..datum.semisimple_rank() {
                    let y = datum.reflect(i, &x);
                    if seen.insert(y.clone()) {
                        stack.push(y);
                    }
                }
            }
            let orbit: BTreeSet<Coweight> = datum.weyl_orbit(&lambda).into_iter().collect();
            assert_eq!(orbit, seen);
        }
    }
}

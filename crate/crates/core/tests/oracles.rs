//! Cross-checks against brute-force dense implementations that share no code
//! with the library: full `n^p × n` tables, the textbook coboundary formula and
//! Gauss–Jordan rank.

use deforma_core::cohomology::{ce_differential, cocycle_space, cohomology};
use deforma_core::deformation::{compose, DeformationState};
use deforma_core::{Cochain, LieAlgebra, Rational, Vector};
use num::{One, Zero};
use proptest::prelude::*;

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Alternating p-cochain stored on every index tuple, including repeats.
#[derive(Clone, Debug, PartialEq)]
struct Dense {
    n: usize,
    p: usize,
    t: Vec<Rational>,
}

impl Dense {
    fn zero(n: usize, p: usize) -> Self {
        Dense { n, p, t: vec![q(0); n.pow(p as u32 + 1)] }
    }

    fn idx(&self, args: &[usize], k: usize) -> usize {
        args.iter().fold(0, |acc, &i| acc * self.n + i) * self.n + k
    }

    fn get(&self, args: &[usize], k: usize) -> &Rational {
        &self.t[self.idx(args, k)]
    }

    /// Sets `f(e_args) = value` and fills in all permutations by sign.
    fn set_alternating(&mut self, args: &[usize], value: &[Rational]) {
        for perm in permutations(self.p) {
            let permuted: Vec<usize> = perm.iter().map(|&i| args[i]).collect();
            let s = q(inversion_sign(&perm));
            for (k, v) in value.iter().enumerate() {
                let at = self.idx(&permuted, k);
                self.t[at] = v * &s;
            }
        }
    }

    fn from_library(c: &Cochain) -> Self {
        let mut d = Dense::zero(c.dim(), c.degree());
        for (tuple, v) in c.entries() {
            d.set_alternating(tuple, v.coords());
        }
        d
    }

    /// Multilinear evaluation on dense coordinate vectors.
    fn eval(&self, xs: &[Vec<Rational>]) -> Vec<Rational> {
        let mut out = vec![q(0); self.n];
        for args in all_tuples(self.n, self.p) {
            let mut c = q(1);
            for (x, &i) in xs.iter().zip(&args) {
                c *= &x[i];
            }
            if c.is_zero() {
                continue;
            }
            for (k, o) in out.iter_mut().enumerate() {
                *o += &c * self.get(&args, k);
            }
        }
        out
    }

    /// Coordinates on increasing tuples, target index fastest.
    fn coordinates(&self) -> Vec<Rational> {
        let mut v = Vec::new();
        for args in all_tuples(self.n, self.p) {
            if args.windows(2).all(|w| w[0] < w[1]) {
                for k in 0..self.n {
                    v.push(self.get(&args, k).clone());
                }
            }
        }
        v
    }
}

fn all_tuples(n: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..p {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

fn permutations(p: usize) -> Vec<Vec<usize>> {
    all_tuples(p, p)
        .into_iter()
        .filter(|t| {
            let mut s = t.clone();
            s.sort();
            s.dedup();
            s.len() == p
        })
        .collect()
}

fn inversion_sign(perm: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

struct DenseLie {
    n: usize,
    c: Dense,
}

impl DenseLie {
    fn of(g: &LieAlgebra) -> Self {
        DenseLie { n: g.dim(), c: Dense::from_library(g.bracket()) }
    }

    fn br(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        self.c.eval(&[x.to_vec(), y.to_vec()])
    }

    fn basis(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![q(0); self.n];
        v[i] = q(1);
        v
    }

    /// Textbook coboundary with adjoint coefficients:
    /// `Σ (-1)^i [x_i, f(..x̂_i..)] + Σ_{i<j} (-1)^{i+j} f([x_i,x_j], ..x̂_i..x̂_j..)`.
    fn delta(&self, f: &Dense) -> Dense {
        let n = self.n;
        let p = f.p;
        let mut out = Dense::zero(n, p + 1);
        for args in all_tuples(n, p + 1) {
            if !args.windows(2).all(|w| w[0] < w[1]) {
                continue;
            }
            let xs: Vec<Vec<Rational>> = args.iter().map(|&i| self.basis(i)).collect();
            let mut total = vec![q(0); n];
            for i in 0..=p {
                let rest: Vec<Vec<Rational>> = (0..=p).filter(|&k| k != i).map(|k| xs[k].clone()).collect();
                let term = self.br(&xs[i], &f.eval(&rest));
                let s = q(if i % 2 == 0 { 1 } else { -1 });
                for (t, v) in total.iter_mut().zip(term) {
                    *t += &s * v;
                }
            }
            for i in 0..=p {
                for j in i + 1..=p {
                    let mut rest = vec![self.br(&xs[i], &xs[j])];
                    rest.extend((0..=p).filter(|&k| k != i && k != j).map(|k| xs[k].clone()));
                    let term = f.eval(&rest);
                    let s = q(if (i + j) % 2 == 0 { 1 } else { -1 });
                    for (t, v) in total.iter_mut().zip(term) {
                        *t += &s * v;
                    }
                }
            }
            out.set_alternating(&args, &total);
        }
        out
    }

    fn elementary(&self, p: usize) -> Vec<Dense> {
        let mut out = Vec::new();
        for args in all_tuples(self.n, p) {
            if args.windows(2).all(|w| w[0] < w[1]) {
                for k in 0..self.n {
                    let mut d = Dense::zero(self.n, p);
                    let mut v = vec![q(0); self.n];
                    v[k] = q(1);
                    d.set_alternating(&args, &v);
                    out.push(d);
                }
            }
        }
        out
    }

    /// Columns of `δ_p` on the elementary cochains; for `p = 0` the columns are `ad_{e_i}`.
    fn delta_columns(&self, p: usize) -> Vec<Vec<Rational>> {
        if p == 0 {
            return (0..self.n)
                .map(|i| {
                    let mut d = Dense::zero(self.n, 1);
                    for j in 0..self.n {
                        let v = self.br(&self.basis(i), &self.basis(j));
                        d.set_alternating(&[j], &v);
                    }
                    d.coordinates()
                })
                .collect();
        }
        self.elementary(p).iter().map(|f| self.delta(f).coordinates()).collect()
    }
}

fn gauss_jordan_rank(cols: &[Vec<Rational>]) -> usize {
    let mut rows: Vec<Vec<Rational>> = cols.to_vec();
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..width {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let inv = Rational::one() / &rows[rank][c];
        for v in rows[rank].iter_mut() {
            *v *= &inv;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = rows[r][c].clone();
                for k in 0..width {
                    let d = &f * &rows[rank][k];
                    rows[r][k] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn suite() -> Vec<LieAlgebra> {
    vec![LieAlgebra::abelian(2), LieAlgebra::abelian(3), LieAlgebra::heisenberg(), LieAlgebra::sl2(), LieAlgebra::affine2()]
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        0
    } else {
        (0..k).fold(1, |a, i| a * (n - i) / (i + 1))
    }
}

/// `(dim Z^p, dim B^p)` from dense ranks.
fn oracle_dims(g: &LieAlgebra, p: usize) -> (usize, usize) {
    let d = DenseLie::of(g);
    let n = g.dim();
    let dim_c = n * binomial(n, p);
    let rank_out = if p < n { gauss_jordan_rank(&d.delta_columns(p)) } else { 0 };
    let rank_in = gauss_jordan_rank(&d.delta_columns(p - 1));
    (dim_c - rank_out, rank_in)
}

#[test]
fn cohomology_dimensions_match_dense_oracle() {
    for g in suite() {
        for p in 1..=3 {
            let h = cohomology(&g, p).unwrap();
            let (z, b) = oracle_dims(&g, p);
            assert_eq!((h.dim_cocycles, h.dim_coboundaries), (z, b), "{} degree {p}", g.name());
        }
    }
}

#[test]
fn second_cohomology_reference_values() {
    let dims: Vec<(String, usize)> = suite()
        .iter()
        .map(|g| {
            let (z, b) = oracle_dims(g, 2);
            (g.name().to_string(), z - b)
        })
        .collect();
    let h3 = oracle_dims(&LieAlgebra::heisenberg(), 2);
    assert_eq!(h3, (8, 3));
    let get = |name: &str| dims.iter().find(|(n, _)| n == name).unwrap().1;
    assert_eq!(get("abelian2"), 2);
    assert_eq!(get("sl2"), 0);
    assert_eq!(get("aff2"), 0);
}

#[test]
fn differential_agrees_with_textbook_formula_up_to_sign() {
    // the library uses d_p = (-1)^{p+1} δ_p
    for g in suite() {
        let d = DenseLie::of(&g);
        for p in 1..=2 {
            for (f_dense, f) in d.elementary(p).iter().zip(cochain_basis(g.dim(), p)) {
                let mut expected = d.delta(f_dense);
                if p % 2 == 0 {
                    expected.t.iter_mut().for_each(|v| *v = -v.clone());
                }
                let got = Dense::from_library(&ce_differential(&g, &f).unwrap());
                assert_eq!(got, expected, "{} degree {p}", g.name());
            }
        }
    }
}

fn cochain_basis(n: usize, p: usize) -> Vec<Cochain> {
    all_tuples(n, p)
        .into_iter()
        .filter(|t| t.windows(2).all(|w| w[0] < w[1]))
        .flat_map(|t| (0..n).map(move |k| Cochain::elementary(n, t.clone(), k)))
        .collect()
}

/// `(fg)(x1,x2,x3) = f(g(x1,x2),x3) − f(g(x1,x3),x2) + f(g(x2,x3),x1)` on dense tables.
fn dense_compose(f: &Dense, g: &Dense) -> Dense {
    let n = f.n;
    let mut out = Dense::zero(n, 3);
    let e = |i: usize| {
        let mut v = vec![q(0); n];
        v[i] = q(1);
        v
    };
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let t1 = f.eval(&[g.eval(&[e(a), e(b)]), e(c)]);
                let t2 = f.eval(&[g.eval(&[e(a), e(c)]), e(b)]);
                let t3 = f.eval(&[g.eval(&[e(b), e(c)]), e(a)]);
                let v: Vec<Rational> = (0..n).map(|k| &t1[k] - &t2[k] + &t3[k]).collect();
                out.set_alternating(&[a, b, c], &v);
            }
        }
    }
    out
}

#[test]
fn obstructed_square_by_hand() {
    let f = obstructed_alpha1();
    let ff = compose(&f, &f).unwrap();
    assert_eq!(ff.eval_basis(&[0, 1, 2]), Vector::from_ints(&[0, 0, -1]));
    assert_eq!(Dense::from_library(&ff), dense_compose(&Dense::from_library(&f), &Dense::from_library(&f)));
}

#[test]
fn broken_table_jacobi_value() {
    let f = obstructed_alpha1();
    let report = deforma_core::algebra::validate_jacobi(&f);
    assert_eq!(report.violations.len(), 1);
    // Jacobi sum [[e1,e2],e3] + [[e2,e3],e1] + [[e3,e1],e2] on the dense table
    let d = Dense::from_library(&f);
    let e = |i: usize| Vector::basis(3, i).into_coords();
    let br = |x: &[Rational], y: &[Rational]| d.eval(&[x.to_vec(), y.to_vec()]);
    let s: Vec<Rational> = (0..3)
        .map(|k| br(&br(&e(0), &e(1)), &e(2))[k].clone() + &br(&br(&e(1), &e(2)), &e(0))[k] + &br(&br(&e(2), &e(0)), &e(1))[k])
        .collect();
    assert_eq!(s, vec![q(0), q(0), q(-1)]);
    assert_eq!(report.violations[0].value.coords(), &s[..]);
}

fn obstructed_alpha1() -> Cochain {
    Cochain::from_entries(3, 2, [(vec![0, 1], Vector::from_ints(&[0, 0, 1])), (vec![0, 2], Vector::from_ints(&[1, 0, 0]))]).unwrap()
}

fn cochain_from(n: usize, p: usize, coeffs: &[i64]) -> Cochain {
    let coords: Vec<Rational> = coeffs.iter().map(|&c| q(c)).collect();
    Cochain::from_coordinates(n, p, &coords)
}

fn small_coeffs(len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, len)
}

/// Does `target` lie in the span of the dense image of `δ_{p}`?
fn in_image(g: &LieAlgebra, p: usize, target: &Cochain) -> bool {
    let d = DenseLie::of(g);
    let cols = d.delta_columns(p);
    let mut with = cols.clone();
    with.push(Dense::from_library(target).coordinates());
    gauss_jordan_rank(&cols) == gauss_jordan_rank(&with)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn compose_matches_dense_oracle(a in small_coeffs(9), b in small_coeffs(9)) {
        let f = cochain_from(3, 2, &a);
        let g = cochain_from(3, 2, &b);
        let fg = compose(&f, &g).unwrap();
        prop_assert_eq!(Dense::from_library(&fg), dense_compose(&Dense::from_library(&f), &Dense::from_library(&g)));
    }

    #[test]
    fn compose_is_alternating(a in small_coeffs(9), b in small_coeffs(9), args in small_coeffs(9)) {
        let f = cochain_from(3, 2, &a);
        let g = cochain_from(3, 2, &b);
        let fg = compose(&f, &g).unwrap();
        let xs: Vec<Vector> = args.chunks(3).map(Vector::from_ints).collect();
        let base = fg.eval(&[&xs[0], &xs[1], &xs[2]]).unwrap();
        let swapped = fg.eval(&[&xs[1], &xs[0], &xs[2]]).unwrap();
        prop_assert_eq!(&base, &-&swapped);
        let repeated = fg.eval(&[&xs[0], &xs[0], &xs[2]]).unwrap();
        prop_assert!(repeated.is_zero());
    }

    #[test]
    fn compose_is_bilinear(a in small_coeffs(9), b in small_coeffs(9), c in small_coeffs(9), k in -4i64..=4) {
        let f = cochain_from(3, 2, &a);
        let g = cochain_from(3, 2, &b);
        let h = cochain_from(3, 2, &c);
        let lhs = compose(&f.scale(&q(k)).add(&g).unwrap(), &h).unwrap();
        let rhs = compose(&f, &h).unwrap().scale(&q(k)).add(&compose(&g, &h).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let lhs = compose(&h, &f.scale(&q(k)).add(&g).unwrap()).unwrap();
        let rhs = compose(&h, &f).unwrap().scale(&q(k)).add(&compose(&h, &g).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn second_obstruction_is_a_cocycle(which in 0usize..5, coeffs in small_coeffs(9)) {
        let g = suite().swap_remove(which);
        let z = cocycle_space(&g, 2).unwrap();
        let mut a1 = Cochain::zero(g.dim(), 2);
        for (b, c) in z.basis.iter().zip(&coeffs) {
            a1 = a1.add(&b.scale(&q(*c))).unwrap();
        }
        let state = DeformationState::new(g.clone(), a1).unwrap();
        let rho = state.rho(2);
        let d = DenseLie::of(&g);
        prop_assert!(d.delta(&Dense::from_library(&rho)).t.iter().all(Zero::is_zero));
    }

    #[test]
    fn extension_rechecks_against_dense_oracle(which in 0usize..5, coeffs in small_coeffs(9)) {
        let g = suite().swap_remove(which);
        let z = cocycle_space(&g, 2).unwrap();
        let mut a1 = Cochain::zero(g.dim(), 2);
        for (b, c) in z.basis.iter().zip(&coeffs) {
            a1 = a1.add(&b.scale(&q(*c))).unwrap();
        }
        let state = DeformationState::new(g.clone(), a1).unwrap().extend(4).unwrap();
        let alphas: Vec<Dense> = state.alphas().iter().map(Dense::from_library).collect();
        // Σ_{i+j=n} α_i α_j = 0 for every solved order
        for n in 0..=state.order_reached() {
            let mut total = Dense::zero(g.dim(), 3);
            for i in 0..=n {
                let t = dense_compose(&alphas[i], &alphas[n - i]);
                for (s, v) in total.t.iter_mut().zip(t.t) {
                    *s += v;
                }
            }
            prop_assert!(total.t.iter().all(Zero::is_zero), "order {}", n);
        }
        match state.first_obstruction() {
            Some(o) => {
                prop_assert_eq!(o.order, state.order_reached() + 1);
                prop_assert!(!o.rho.is_zero());
                prop_assert!(!in_image(&g, 2, &o.rho));
                prop_assert!(o.class_coordinates.iter().any(|c| !c.is_zero()));
            }
            None => prop_assert_eq!(state.order_reached(), 4),
        }
    }
}

#[test]
fn heisenberg_bracket_deforms_abelian_without_corrections() {
    let a1 = Cochain::elementary(3, vec![0, 1], 2);
    let state = DeformationState::new(LieAlgebra::abelian(3), a1).unwrap().extend(5).unwrap();
    assert_eq!(state.order_reached(), 5);
    assert!(state.alphas()[2..].iter().all(Cochain::is_zero));
    assert!(state.first_obstruction().is_none());
}

#[test]
fn oracle_rank_sanity() {
    let cols = vec![vec![q(1), q(2)], vec![q(2), q(4)], vec![q(0), q(0)]];
    assert_eq!(gauss_jordan_rank(&cols), 1);
}

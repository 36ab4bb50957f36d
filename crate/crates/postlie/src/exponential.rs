//! Exponentials, the inverse differential of `exp`, and the Magnus-type
//! recursion that connects the two products on the forest algebra.
//!
//! There are two exponentials: `exp` with respect to concatenation and
//! `exp*` with respect to the Grossman-Larson product. Both send
//! infinitesimal characters to characters, but they differ from degree two
//! onward; the discrepancy is governed by a differential equation whose
//! solution `theta(t)` satisfies `exp*(f) = exp(theta(1))`.
//!
//! [`magnus_theta`] solves that equation degree by degree. Writing
//! `theta' = dexpinv_theta(exp(theta) |> f)` and extracting coefficients of
//! `t^n` yields
//!
//! ```text
//! n * theta_n = sum_{j=0}^{n-1} [t^j](dexpinv operator) applied to
//!               [t^(n-1-j)](exp(theta) |> f)
//! ```
//!
//! where the `dexpinv` operator here carries the *left-trivialized* sign
//! convention (`+1/2 [theta, -]` in degree one). The standalone [`dexpinv`]
//! function instead uses the convention with `-1/2 [U, V]`, which is the one
//! appearing in the Munthe-Kaas update formula; since all higher odd
//! Bernoulli numbers vanish, the two versions differ only in the sign of the
//! single-commutator term. The sign used in the recursion is pinned by the
//! bridge identity `exp*(f) = exp(theta(1))`, which the test suite checks
//! through degree five.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::forest::ForestBasis;
use crate::postlie::{commutator, gl_product, left_graft};
use crate::rational::{factorial, Rational};
use crate::series::{Series, SeriesError};

pub use crate::rational::{bernoulli, BernoulliCache};

/// The exponential with respect to concatenation:
/// `exp(f) = sum_k f^k / k!`, truncated at degree `n`.
///
/// Fails with [`SeriesError::NonzeroCounit`] if `f` has a coefficient at the
/// empty forest.
pub fn exp_concat<F: ForestBasis>(f: &Series<F>, n: usize) -> Result<Series<F>, SeriesError> {
    exp_with(f, n, |a, b| a.concat_product(b))
}

/// The exponential with respect to the Grossman-Larson product:
/// `exp*(f) = sum_k f^(*k) / k!`, truncated at degree `n`.
///
/// Fails with [`SeriesError::NonzeroCounit`] if `f` has a coefficient at the
/// empty forest.
pub fn exp_gl<F: ForestBasis>(f: &Series<F>, n: usize) -> Result<Series<F>, SeriesError> {
    exp_with(f, n, |a, b| gl_product(a, b))
}

fn exp_with<F: ForestBasis>(
    f: &Series<F>,
    n: usize,
    product: impl Fn(&Series<F>, &Series<F>) -> Series<F>,
) -> Result<Series<F>, SeriesError> {
    if !f.counit().is_zero() {
        return Err(SeriesError::NonzeroCounit);
    }
    let n = n.min(f.truncation());
    let f = f.with_truncation(n);
    let mut acc = Series::unit(n);
    let mut power = Series::unit(n);
    for k in 1..=n {
        power = product(&power, &f).scale(&Rational::new(1.into(), k.into()));
        if power.is_zero() {
            break;
        }
        acc = acc.add(&power);
    }
    Ok(acc)
}

/// The inverse differential of the exponential map,
/// `dexpinv_U(V) = sum_k B_k / k! ad_U^k(V)`, truncated at degree `n`, in
/// the convention with Bernoulli numbers of the first kind:
/// `V - 1/2 [U, V] + 1/12 [U, [U, V]] - ...`.
///
/// Both arguments must vanish at the empty forest.
pub fn dexpinv<F: ForestBasis>(
    u: &Series<F>,
    v: &Series<F>,
    n: usize,
) -> Result<Series<F>, SeriesError> {
    dexpinv_with(u, v, n, false)
}

/// `dexpinv` in the left-trivialized convention (`+1/2 [U, V] + ...`,
/// Bernoulli numbers of the second kind). Equivalent to `dexpinv(-U, V)`;
/// this is the version the Magnus recursion and the Munthe-Kaas stage
/// computation consume internally.
pub(crate) fn dexpinv_left<F: ForestBasis>(
    u: &Series<F>,
    v: &Series<F>,
    n: usize,
) -> Result<Series<F>, SeriesError> {
    dexpinv_with(u, v, n, true)
}

fn dexpinv_with<F: ForestBasis>(
    u: &Series<F>,
    v: &Series<F>,
    n: usize,
    second_kind: bool,
) -> Result<Series<F>, SeriesError> {
    if !u.counit().is_zero() || !v.counit().is_zero() {
        return Err(SeriesError::NonzeroCounit);
    }
    let n = n.min(u.truncation()).min(v.truncation());
    let u = u.with_truncation(n);
    let mut bernoulli = BernoulliCache::new();
    let mut acc = v.with_truncation(n);
    let mut bracket = acc.clone();
    for k in 1..=n {
        bracket = commutator(&u, &bracket);
        if bracket.is_zero() {
            break;
        }
        let mut b = bernoulli.get(k);
        if second_kind && k == 1 {
            b = -b;
        }
        let coefficient = b / Rational::from_integer(factorial(k));
        acc = acc.add(&bracket.scale(&coefficient));
    }
    Ok(acc)
}

/// The homogeneous terms `theta_1, ..., theta_n` of the Magnus-type
/// expansion: `theta_1 = f`, `2 theta_2 = f |> f`, and in general
/// `n theta_n` collects the `t^(n-1)` coefficient of
/// `dexpinv_theta(exp(theta) |> f)` in the left-trivialized convention.
///
/// For homogeneous `f` of degree one, `theta_k` is homogeneous of degree
/// `k`; in general `theta_k` collects all contributions with `k` insertions
/// of `f`.
pub fn magnus_theta_terms<F: ForestBasis>(
    f: &Series<F>,
    n: usize,
) -> Result<Vec<Series<F>>, SeriesError> {
    if !f.counit().is_zero() {
        return Err(SeriesError::NonzeroCounit);
    }
    let n = n.min(f.truncation());
    let f = f.with_truncation(n);
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut thetas: Vec<Series<F>> = vec![f.clone()];
    let mut bernoulli = BernoulliCache::new();
    for m in 2..=n {
        let mut rhs = Series::zero(n);
        for j in 0..=m - 1 {
            let grafted = graft_coefficient(&thetas, &f, m - 1 - j, n);
            rhs = rhs.add(&ad_coefficient(&thetas, &grafted, j, n, &mut bernoulli));
        }
        thetas.push(rhs.scale(&Rational::new(1.into(), (m as i64).into())));
    }
    Ok(thetas)
}

/// The Magnus-type series `theta(1) = theta_1 + ... + theta_n`, satisfying
/// `exp(theta(1)) = exp*(f)` up to the truncation.
pub fn magnus_theta<F: ForestBasis>(f: &Series<F>, n: usize) -> Result<Series<F>, SeriesError> {
    let terms = magnus_theta_terms(f, n)?;
    let mut acc = Series::zero(n.min(f.truncation()));
    for term in &terms {
        acc = acc.add(term);
    }
    Ok(acc)
}

/// `[t^j] (exp(theta(t)) |> f)`: for `j = 0` this is `f` itself, otherwise
/// a sum over compositions `j = k_1 + ... + k_p` of
/// `(theta_{k_1} ... theta_{k_p}) |> f / p!`.
fn graft_coefficient<F: ForestBasis>(
    thetas: &[Series<F>],
    f: &Series<F>,
    j: usize,
    n: usize,
) -> Series<F> {
    if j == 0 {
        return f.clone();
    }
    let mut acc = Series::zero(n);
    for p in 1..=j {
        let weight = Rational::from_integer(factorial(p)).recip();
        for composition in compositions(j, p) {
            let mut word = Series::unit(n);
            for k in composition {
                word = word.concat_product(&thetas[k - 1]);
            }
            acc = acc.add(&left_graft(&word, f).scale(&weight));
        }
    }
    acc
}

/// `[t^j]` of the left-trivialized `dexpinv` operator applied to `x`:
/// for `j = 0` the identity, otherwise a sum over compositions
/// `j = k_1 + ... + k_q` of `B+_q / q! ad_{theta_{k_1}} ... ad_{theta_{k_q}}(x)`.
fn ad_coefficient<F: ForestBasis>(
    thetas: &[Series<F>],
    x: &Series<F>,
    j: usize,
    n: usize,
    bernoulli: &mut BernoulliCache,
) -> Series<F> {
    if j == 0 {
        return x.clone();
    }
    let mut acc = Series::zero(n);
    for q in 1..=j {
        let mut b = bernoulli.get(q);
        if q == 1 {
            b = -b; // second-kind convention: B+_1 = +1/2
        }
        if b.is_zero() {
            continue;
        }
        let weight = b / Rational::from_integer(factorial(q));
        for composition in compositions(j, q) {
            let mut nested = x.clone();
            for k in composition.iter().rev() {
                nested = commutator(&thetas[k - 1], &nested);
            }
            acc = acc.add(&nested.scale(&weight));
        }
    }
    acc
}

/// All ordered compositions of `total` into exactly `parts` positive parts.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    if total < parts {
        return Vec::new();
    }
    let mut out = Vec::new();
    for first in 1..=total - parts + 1 {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// The series `sum_{k=0}^{n} generator^(*k) / (k+1)!`, the factorially
/// weighted sum of Grossman-Larson powers of the single-node tree.
///
/// Its `k`-th term equals the degree-`k` slice of `exp*(generator)` scaled
/// by `(k+1)` extra in the denominator; it is *not* equal to
/// `exp*(generator)` (they already differ at degree one).
pub fn phi_series<F: ForestBasis>(n: usize) -> Series<F> {
    let generator: Series<F> = Series::generator(n);
    let mut acc = Series::zero(n);
    let mut power = Series::unit(n);
    for k in 0..=n {
        acc = acc.add(&power.scale(&Rational::from_integer(factorial(k + 1)).recip()));
        power = gl_product(&power, &generator);
        if power.is_zero() {
            break;
        }
    }
    acc
}

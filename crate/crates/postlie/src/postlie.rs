//! Left grafting, the Grossman-Larson product, and the post-Lie structure.
//!
//! On single trees, `x |> y` grafts the root of `x` onto every node of `y`
//! (as the new leftmost branch in the planar case), one summand per node.
//! The operation extends to whole forests of the enveloping algebra by three
//! rules, applied recursively:
//!
//! * the empty forest acts as the identity, and kills nothing: `1 |> A = A`;
//! * a nonempty forest annihilates the unit: `A |> 1 = 0`;
//! * left factors peel off one tree at a time:
//!   `(x A) |> B = x |> (A |> B) - (x |> A) |> B`.
//!
//! The same recursion drives the nonplanar (pre-Lie) instance, where grafting
//! ignores branch order.
//!
//! The Grossman-Larson product `A * B = A_(1) (A_(2) |> B)` (Sweedler sum
//! over the coshuffle) makes the forest span an associative algebra whose
//! product is dual to pruning; on single trees it can be computed by the
//! root trick `B-( w1 |> B+(w2) )`, which this module exposes as an
//! independent route for cross-checking.

use alloc::vec::Vec;

use num_traits::One;

use crate::forest::{planar_forests, ForestBasis, PlanarForest};
use crate::rational::Rational;
use crate::series::{Series, SeriesError, TensorSeries};

/// Left grafting `a |> b`, extended bilinearly to series.
///
/// The result carries the smaller of the two truncations. Grafting preserves
/// total degree, so no terms are created beyond the inputs' degrees.
pub fn left_graft<F: ForestBasis>(a: &Series<F>, b: &Series<F>) -> Series<F> {
    let truncation = a.truncation().min(b.truncation());
    let mut out = Series::zero(truncation);
    for (w, cw) in a.terms() {
        if w.degree() > truncation {
            continue;
        }
        for (v, cv) in b.terms() {
            if w.degree() + v.degree() > truncation {
                continue;
            }
            out.add_scaled_assign(&graft_basis(w, v, truncation), &(cw * cv));
        }
    }
    out
}

/// Left grafting of one basis forest onto another.
pub fn graft_basis<F: ForestBasis>(w: &F, v: &F, truncation: usize) -> Series<F> {
    if w.is_unit() {
        return Series::basis(v.clone(), truncation);
    }
    if v.is_unit() {
        return Series::zero(truncation);
    }
    let trees = w.trees();
    if trees.len() == 1 {
        // a single tree grafts onto every node of every tree of the target
        let x = &trees[0];
        let targets = v.trees();
        let mut out = Series::zero(truncation);
        for (i, target) in targets.iter().enumerate() {
            for grafted in F::graft_at_nodes(x, target) {
                let mut new_trees = targets.to_vec();
                new_trees[i] = grafted;
                out.insert(F::from_trees(new_trees), Rational::one());
            }
        }
        out
    } else {
        // (x A) |> B = x |> (A |> B) - (x |> A) |> B
        let x = Series::basis(F::single(trees[0].clone()), truncation);
        let rest = Series::basis(F::from_trees(trees[1..].to_vec()), truncation);
        let v_series = Series::basis(v.clone(), truncation);
        let nested = left_graft(&x, &left_graft(&rest, &v_series));
        let swapped = left_graft(&left_graft(&x, &rest), &v_series);
        nested.sub(&swapped)
    }
}

/// The Grossman-Larson product `A * B = A_(1) (A_(2) |> B)`, extended
/// bilinearly to series.
pub fn gl_product<F: ForestBasis>(a: &Series<F>, b: &Series<F>) -> Series<F> {
    let truncation = a.truncation().min(b.truncation());
    let mut out = Series::zero(truncation);
    for (w, cw) in a.terms() {
        if w.degree() > truncation {
            continue;
        }
        for (v, cv) in b.terms() {
            if w.degree() + v.degree() > truncation {
                continue;
            }
            out.add_scaled_assign(&gl_product_basis(w, v, truncation), &(cw * cv));
        }
    }
    out
}

/// The Grossman-Larson product of two basis forests.
pub fn gl_product_basis<F: ForestBasis>(w: &F, v: &F, truncation: usize) -> Series<F> {
    let trees = w.trees();
    let k = trees.len();
    let mut out = Series::zero(truncation);
    // Sweedler expansion of the coshuffle: every subset of tree positions
    // stays as a left cofactor, the complement grafts onto v.
    for mask in 0u64..(1u64 << k) {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (i, tree) in trees.iter().enumerate() {
            if mask & (1 << i) != 0 {
                left.push(tree.clone());
            } else {
                right.push(tree.clone());
            }
        }
        let prefix = Series::basis(F::from_trees(left), truncation);
        let grafted = graft_basis(&F::from_trees(right), v, truncation);
        out.add_scaled_assign(&prefix.concat_product(&grafted), &Rational::one());
    }
    out
}

/// The Grossman-Larson product of two basis forests computed by the root
/// trick: `w1 * w2 = B-( w1 |> B+(w2) )`.
///
/// This is an independent route to [`gl_product_basis`]; the two must agree,
/// which the test suite verifies degree by degree.
pub fn gl_product_via_roots<F: ForestBasis>(w1: &F, w2: &F, truncation: usize) -> Series<F> {
    // the intermediate tree B+(w2) has one extra node, so the grafting step
    // needs headroom of one degree before the root is removed again
    let headroom = w1.degree() + w2.degree() + 1;
    let rooted = Series::basis(F::single(w2.b_plus()), headroom);
    let grafted = left_graft(&Series::basis(w1.clone(), headroom), &rooted);
    let mut out = Series::zero(truncation);
    for (forest, coefficient) in grafted.terms() {
        debug_assert_eq!(
            forest.trees().len(),
            1,
            "grafting into a single tree yields single trees"
        );
        out.insert(F::b_minus(&forest.trees()[0]), coefficient.clone());
    }
    out
}

/// The coproduct dual to the Grossman-Larson product under the orthonormal
/// pairing on planar forests:
/// `delta*(w) = sum <w1 * w2, w> w1 (x) w2` over pairs of forests whose
/// degrees add up to the degree of `w`.
pub fn gl_dual_coproduct(forest: &PlanarForest, truncation: usize) -> TensorSeries<PlanarForest> {
    let degree = forest.degree();
    let mut out = TensorSeries::zero(truncation.max(degree));
    for d1 in 0..=degree {
        for w1 in planar_forests(d1) {
            for w2 in planar_forests(degree - d1) {
                let coefficient = gl_product_basis(&w1, &w2, degree).coefficient(forest);
                out.insert(w1.clone(), w2, coefficient);
            }
        }
    }
    out
}

/// The concatenation commutator `[a, b] = a b - b a`.
pub fn commutator<F: ForestBasis>(a: &Series<F>, b: &Series<F>) -> Series<F> {
    a.concat_product(b).sub(&b.concat_product(a))
}

/// The double bracket `[[x, y]] = x |> y - y |> x + [x, y]` on primitive
/// series: the Lie bracket for which the Grossman-Larson algebra is the
/// enveloping algebra.
///
/// Returns [`SeriesError::NotPrimitive`] unless both arguments are
/// infinitesimal characters.
pub fn double_bracket<F: ForestBasis>(
    x: &Series<F>,
    y: &Series<F>,
) -> Result<Series<F>, SeriesError> {
    require_primitive(x)?;
    require_primitive(y)?;
    Ok(left_graft(x, y)
        .sub(&left_graft(y, x))
        .add(&commutator(x, y)))
}

/// The adjoint post-Lie product `x |>> y = x |> y + [x, y]` on primitive
/// series. Applying the construction to the adjoint structure (whose bracket
/// is `-[x, y]`) recovers `|>`, making it an involution.
///
/// Returns [`SeriesError::NotPrimitive`] unless both arguments are
/// infinitesimal characters.
pub fn adjoint_product<F: ForestBasis>(
    x: &Series<F>,
    y: &Series<F>,
) -> Result<Series<F>, SeriesError> {
    require_primitive(x)?;
    require_primitive(y)?;
    Ok(left_graft(x, y).add(&commutator(x, y)))
}

/// The two post-Lie axiom residuals for primitive `x, y, z`:
///
/// * `x |> [y, z] - [x |> y, z] - [y, x |> z]` (grafting acts by
///   derivations on the bracket), and
/// * `[x, y] |> z - a(x, y, z) + a(y, x, z)` where
///   `a(x, y, z) = x |> (y |> z) - (x |> y) |> z` is the associator.
///
/// Both must vanish identically; callers are expected to pass primitive
/// series (single trees or their linear combinations).
pub fn post_lie_residuals<F: ForestBasis>(
    x: &Series<F>,
    y: &Series<F>,
    z: &Series<F>,
) -> (Series<F>, Series<F>) {
    let derivation = left_graft(x, &commutator(y, z))
        .sub(&commutator(&left_graft(x, y), z))
        .sub(&commutator(y, &left_graft(x, z)));
    let associator =
        |u: &Series<F>, v: &Series<F>, w: &Series<F>| -> Series<F> {
            left_graft(u, &left_graft(v, w)).sub(&left_graft(&left_graft(u, v), w))
        };
    let bracket_rule = left_graft(&commutator(x, y), z)
        .sub(&associator(x, y, z))
        .add(&associator(y, x, z));
    (derivation, bracket_rule)
}

/// The curvature residual
/// `x |> (y |> z) - y |> (x |> z) - [[x, y]] |> z`
/// of the connection with torsion given by the double bracket; it vanishes
/// identically (the connection is flat).
pub fn curvature_residual<F: ForestBasis>(
    x: &Series<F>,
    y: &Series<F>,
    z: &Series<F>,
) -> Series<F> {
    let double = left_graft(x, y)
        .sub(&left_graft(y, x))
        .add(&commutator(x, y));
    left_graft(x, &left_graft(y, z))
        .sub(&left_graft(y, &left_graft(x, z)))
        .sub(&left_graft(&double, z))
}

/// Pre-Lie grafting of one abstract tree onto another: one summand per node
/// of `b`, ignoring branch order.
pub fn prelie_graft(
    a: &crate::forest::NonplanarTree,
    b: &crate::forest::NonplanarTree,
    truncation: usize,
) -> Series<crate::forest::NonplanarForest> {
    use crate::forest::NonplanarForest;
    graft_basis(
        &NonplanarForest::single(a.clone()),
        &NonplanarForest::single(b.clone()),
        truncation,
    )
}

fn require_primitive<F: ForestBasis>(s: &Series<F>) -> Result<(), SeriesError> {
    if s.is_infinitesimal_character() {
        Ok(())
    } else {
        Err(SeriesError::NotPrimitive)
    }
}

/// The derivation extension of the adjoint product to forest words:
/// `x |>> (t1...tn)` replaces one letter at a time by
/// `x |>> ti = x |> ti + x ti - ti x`.
///
/// This is the single-tree action entering the product identity
/// `A * B = (A_(1) |>> B) A_(2)`.
pub fn adjoint_graft_tree<F: ForestBasis>(
    x: &F::Tree,
    b: &F,
    truncation: usize,
) -> Series<F> {
    let x_forest = F::single(x.clone());
    let mut out = Series::zero(truncation);
    let trees = b.trees();
    for i in 0..trees.len() {
        let target = F::single(trees[i].clone());
        // x |>> t_i as a series
        let acted = graft_basis(&x_forest, &target, truncation)
            .add(&Series::basis(x_forest.concat(&target), truncation))
            .sub(&Series::basis(target.concat(&x_forest), truncation));
        let prefix = Series::basis(F::from_trees(trees[..i].to_vec()), truncation);
        let suffix = Series::basis(F::from_trees(trees[i + 1..].to_vec()), truncation);
        out.add_scaled_assign(
            &prefix.concat_product(&acted).concat_product(&suffix),
            &Rational::one(),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::{
        nonplanar_trees, parse_nonplanar_tree, parse_planar_forest, planar_trees, NonplanarForest,
    };
    use crate::rational::integer;

    fn pf(s: &str) -> PlanarForest {
        parse_planar_forest(s).unwrap()
    }

    fn series(s: &str, n: usize) -> Series<PlanarForest> {
        Series::basis(pf(s), n)
    }

    fn expect(terms: &[(i64, &str)], n: usize) -> Series<PlanarForest> {
        Series::from_terms(
            terms.iter().map(|(c, f)| (pf(f), integer(*c))),
            n,
        )
    }

    #[test]
    fn grafting_single_trees() {
        assert_eq!(
            left_graft(&series("[]", 3), &series("[]", 3)),
            expect(&[(1, "[[]]")], 3)
        );
        assert_eq!(
            left_graft(&series("[]", 3), &series("[[]]", 3)),
            expect(&[(1, "[[][]]"), (1, "[[[]]]")], 3)
        );
        // the scion lands as the leftmost branch
        assert_eq!(
            left_graft(&series("[[]]", 4), &series("[[]]", 4)),
            expect(&[(1, "[[[]][]]"), (1, "[[[[]]]]")], 4)
        );
    }

    #[test]
    fn grafting_a_tree_onto_a_tree_with_symmetry() {
        // the worked example: a 2-chain onto the cherry, one term per node
        assert_eq!(
            left_graft(&series("[[]]", 5), &series("[[][]]", 5)),
            expect(&[(1, "[[[]][][]]"), (1, "[[[[]]][]]"), (1, "[[][[[]]]]")], 5)
        );
    }

    #[test]
    fn unit_rules() {
        let b = series("[[]] []", 4);
        assert_eq!(left_graft(&Series::unit(4), &b), b);
        assert!(left_graft(&series("[]", 4), &Series::unit(4)).is_zero());
        assert!(left_graft(&series("[] []", 4), &Series::unit(4)).is_zero());
    }

    #[test]
    fn two_bullets_graft_as_a_derivation_minus_correction() {
        // (x A) |> B with x = A = B = [] : the recursion must reduce to the
        // cherry, not the chain
        assert_eq!(
            left_graft(&series("[] []", 3), &series("[]", 3)),
            expect(&[(1, "[[][]]")], 3)
        );
        // grafting a single tree onto a product acts like a derivation
        assert_eq!(
            left_graft(&series("[]", 4), &series("[] []", 4)),
            expect(&[(1, "[[]] []"), (1, "[] [[]]")], 4)
        );
    }

    #[test]
    fn gl_product_small_cases() {
        assert_eq!(
            gl_product(&series("[]", 3), &series("[]", 3)),
            expect(&[(1, "[] []"), (1, "[[]]")], 3)
        );
        assert_eq!(
            gl_product(&series("[] []", 3), &series("[]", 3)),
            expect(&[(1, "[] [] []"), (2, "[] [[]]"), (1, "[[][]]")], 3)
        );
        let a = series("[[]] []", 4);
        assert_eq!(gl_product(&a, &Series::unit(4)), a);
        assert_eq!(gl_product(&Series::unit(4), &a), a);
    }

    #[test]
    fn gl_triple_power_of_the_generator() {
        let bullet = series("[]", 3);
        let cube = gl_product(&gl_product(&bullet, &bullet), &bullet);
        assert_eq!(
            cube,
            expect(
                &[
                    (1, "[] [] []"),
                    (2, "[] [[]]"),
                    (1, "[[]] []"),
                    (1, "[[][]]"),
                    (1, "[[[]]]"),
                ],
                3
            )
        );
    }

    #[test]
    fn root_trick_reproduces_gl_product() {
        for n1 in 0..=2 {
            for w1 in planar_forests(n1) {
                for n2 in 0..=2 {
                    for w2 in planar_forests(n2) {
                        assert_eq!(
                            gl_product_via_roots(&w1, &w2, 4),
                            gl_product_basis(&w1, &w2, 4),
                            "{w1} * {w2}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn dual_coproduct_of_the_chain() {
        let delta = gl_dual_coproduct(&pf("[[]]"), 2);
        assert_eq!(delta.coefficient(&pf("[[]]"), &pf("1")), integer(1));
        assert_eq!(delta.coefficient(&pf("1"), &pf("[[]]")), integer(1));
        assert_eq!(delta.coefficient(&pf("[]"), &pf("[]")), integer(1));
        assert_eq!(delta.terms().count(), 3);
    }

    #[test]
    fn dual_coproduct_is_dual_to_gl_product() {
        // <a * b, w> = <a (x) b, delta*(w)> for basis a, b
        for w in planar_forests(3) {
            let delta = gl_dual_coproduct(&w, 3);
            for d1 in 0..=3usize {
                for a in planar_forests(d1) {
                    for b in planar_forests(3 - d1) {
                        let lhs = gl_product_basis(&a, &b, 3).coefficient(&w);
                        let rhs = delta.coefficient(&a, &b);
                        assert_eq!(lhs, rhs, "w = {w}, a = {a}, b = {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn commutator_is_antisymmetric() {
        let a = series("[]", 4);
        let b = series("[[]]", 4);
        assert_eq!(commutator(&a, &b), commutator(&b, &a).neg());
        assert!(commutator(&a, &a).is_zero());
    }

    #[test]
    fn double_bracket_on_generators() {
        let x = series("[]", 3);
        assert!(double_bracket(&x, &x).unwrap().is_zero());
        let y = series("[[]]", 3);
        let expected = expect(&[(1, "[[][]]"), (1, "[] [[]]"), (-1, "[[]] []")], 3);
        assert_eq!(double_bracket(&x, &y).unwrap(), expected);
    }

    #[test]
    fn double_bracket_rejects_non_primitive_input() {
        let word = series("[] []", 3);
        let x = series("[]", 3);
        assert_eq!(
            double_bracket(&word, &x).unwrap_err(),
            SeriesError::NotPrimitive
        );
        assert_eq!(
            adjoint_product(&x, &word).unwrap_err(),
            SeriesError::NotPrimitive
        );
    }

    #[test]
    fn adjoint_is_an_involution() {
        // adjoint of the adjoint (bracket negated) gives back plain grafting
        for s in ["[]", "[[]]", "[[][]]"] {
            for t in ["[]", "[[]]"] {
                let x = series(s, 5);
                let y = series(t, 5);
                let adj = adjoint_product(&x, &y).unwrap();
                let back = adj.add(&commutator(&x, &y).neg());
                assert_eq!(back, left_graft(&x, &y), "{s} acting on {t}");
            }
        }
    }

    #[test]
    fn post_lie_axioms_hold_on_tree_triples() {
        for x in planar_trees(1).iter().chain(planar_trees(2).iter()) {
            for y in planar_trees(1).iter().chain(planar_trees(2).iter()) {
                for z in planar_trees(1) {
                    let xs = Series::basis(PlanarForest::single(x.clone()), 5);
                    let ys = Series::basis(PlanarForest::single(y.clone()), 5);
                    let zs = Series::basis(PlanarForest::single(z.clone()), 5);
                    let (r1, r2) = post_lie_residuals(&xs, &ys, &zs);
                    assert!(r1.is_zero(), "derivation rule for {x}, {y}, {z}");
                    assert!(r2.is_zero(), "bracket rule for {x}, {y}, {z}");
                    assert!(curvature_residual(&xs, &ys, &zs).is_zero());
                }
            }
        }
    }

    #[test]
    fn adjoint_extension_reproduces_gl_product() {
        // A * B = (A |>> B) + B A for a primitive single tree A
        for x in planar_trees(1).iter().chain(planar_trees(2).iter()) {
            for b in ["1", "[]", "[] []", "[[]]"] {
                let bf = pf(b);
                let lhs = gl_product_basis(&PlanarForest::single(x.clone()), &bf, 4);
                let rhs = adjoint_graft_tree(x, &bf, 4)
                    .add(&Series::basis(bf.concat(&PlanarForest::single(x.clone())), 4));
                assert_eq!(lhs, rhs, "x = {x}, B = {b}");
            }
        }
    }

    #[test]
    fn prelie_graft_collects_symmetric_nodes() {
        let a = parse_nonplanar_tree("[[]]").unwrap();
        let b = parse_nonplanar_tree("[[][]]").unwrap();
        let result = prelie_graft(&a, &b, 5);
        let cherry_with_chain = parse_nonplanar_tree("[[][][[]]]").unwrap();
        let leaf_extended = parse_nonplanar_tree("[[][[[]]]]").unwrap();
        assert_eq!(
            result.coefficient(&NonplanarForest::single(cherry_with_chain)),
            integer(1)
        );
        assert_eq!(
            result.coefficient(&NonplanarForest::single(leaf_extended)),
            integer(2)
        );
        assert_eq!(result.num_terms(), 2);
    }

    #[test]
    fn nonplanar_grafting_matches_projected_planar_grafting() {
        for x in planar_trees(2) {
            for y in nonplanar_trees(3) {
                // project after grafting planar representatives
                let planar = left_graft(
                    &Series::basis(PlanarForest::single(x.clone()), 5),
                    &Series::basis(
                        PlanarForest::single(
                            crate::forest::planar_trees(3)
                                .into_iter()
                                .find(|t| t.to_nonplanar() == y)
                                .unwrap(),
                        ),
                        5,
                    ),
                );
                let mut projected: Series<NonplanarForest> = Series::zero(5);
                for (f, c) in planar.terms() {
                    projected.add_scaled_assign(&Series::basis(f.to_nonplanar(), 5), c);
                }
                let direct = prelie_graft(&x.to_nonplanar(), &y, 5);
                assert_eq!(projected, direct, "x = {x}, y = {y}");
            }
        }
    }
}

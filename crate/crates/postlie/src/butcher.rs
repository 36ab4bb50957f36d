//! Butcher tableaux, elementary weights, order conditions, and the series
//! characters of Runge-Kutta-type schemes.
//!
//! A tableau `(A, b)` determines for every abstract tree an *elementary
//! weight*: stage vectors built bottom-up (`1` on leaves, Hadamard products
//! of `A`-applications on interior nodes) contracted with `b` at the root.
//! The scheme attains order `p` exactly when the weight of every tree with
//! at most `p` nodes equals the inverse tree factorial — those equations are
//! the classical order conditions, generated here together with compact
//! (`b(Ae·Ae) = 1/3`) and componentwise (`Σ_ijk b_i a_ij a_ik = 1/3`)
//! renderings.
//!
//! At the series level the same scheme is a character of the forest Hopf
//! algebra. Stage series solve the fixed-point equations
//! `K_i = exp(sum_j a_ij K_j) |> generator` (one new degree per sweep, so
//! implicit tableaux converge in `N` sweeps; explicit tableaux settle in one
//! because stages are updated in place), and the method character is
//! `exp(sum_i b_i K_i)`. Running the fixed point in the nonplanar basis
//! yields the classical Runge-Kutta character; the planar basis gives its
//! naive post-Lie transplant; inserting `dexpinv` into the stage relation
//! gives the Munthe-Kaas corrected scheme, whose character matches the
//! Grossman-Larson exponential to the scheme's classical order.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::exponential::{dexpinv_left, exp_concat};
use crate::forest::{
    nonplanar_trees, ForestBasis, NonplanarForest, NonplanarTree, PlanarForest,
};
use crate::postlie::left_graft;
use crate::rational::{ratio, render_rational, Rational};
use crate::series::Series;

/// A Runge-Kutta tableau: an `s x s` coefficient matrix `a` and a weight
/// vector `b` of length `s`, all exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ButcherTableau {
    name: String,
    a: Vec<Vec<Rational>>,
    b: Vec<Rational>,
}

/// Structural errors raised when assembling a tableau.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TableauError {
    /// The tableau has no stages.
    Empty,
    /// Row `row` of `a` has `got` entries instead of `expected`.
    RaggedRow {
        /// Zero-based row index.
        row: usize,
        /// Expected length (the number of stages).
        expected: usize,
        /// Actual length.
        got: usize,
    },
    /// `b` has `got` entries instead of `expected`.
    WeightCount {
        /// Expected length (the number of stages).
        expected: usize,
        /// Actual length.
        got: usize,
    },
}

impl fmt::Display for TableauError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableauError::Empty => write!(f, "tableau must have at least one stage"),
            TableauError::RaggedRow { row, expected, got } => write!(
                f,
                "row {row} of the coefficient matrix has {got} entries, expected {expected}"
            ),
            TableauError::WeightCount { expected, got } => {
                write!(f, "weight vector has {got} entries, expected {expected}")
            }
        }
    }
}

impl core::error::Error for TableauError {}

impl ButcherTableau {
    /// Builds a tableau, validating that `a` is square of the size of `b`.
    pub fn new(
        name: impl Into<String>,
        a: Vec<Vec<Rational>>,
        b: Vec<Rational>,
    ) -> Result<Self, TableauError> {
        let s = a.len();
        if s == 0 {
            return Err(TableauError::Empty);
        }
        for (row, entries) in a.iter().enumerate() {
            if entries.len() != s {
                return Err(TableauError::RaggedRow {
                    row,
                    expected: s,
                    got: entries.len(),
                });
            }
        }
        if b.len() != s {
            return Err(TableauError::WeightCount {
                expected: s,
                got: b.len(),
            });
        }
        Ok(ButcherTableau {
            name: name.into(),
            a,
            b,
        })
    }

    /// The descriptive name.
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of stages.
    pub fn stages(&self) -> usize {
        self.b.len()
    }

    /// The coefficient matrix.
    pub fn a(&self) -> &[Vec<Rational>] {
        &self.a
    }

    /// The weight vector.
    pub fn b(&self) -> &[Rational] {
        &self.b
    }

    /// Whether the tableau is explicit (strictly lower triangular `a`).
    pub fn is_explicit(&self) -> bool {
        self.a
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().skip(i).all(Rational::is_zero))
    }

    /// Applies the coefficient matrix to a stage vector.
    fn apply_a(&self, v: &[Rational]) -> Vec<Rational> {
        self.a
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, x)| a * x).sum())
            .collect()
    }
}

/// The stage vector `Phi(tree)` of elementary-weight theory: all ones on a
/// leaf, and the Hadamard product of `A * Phi(branch)` over the branches of
/// the root otherwise.
pub fn stage_weights(tableau: &ButcherTableau, tree: &NonplanarTree) -> Vec<Rational> {
    let mut phi = vec![Rational::one(); tableau.stages()];
    for child in tree.children() {
        let applied = tableau.apply_a(&stage_weights(tableau, child));
        for (entry, factor) in phi.iter_mut().zip(&applied) {
            *entry *= factor;
        }
    }
    phi
}

/// The elementary weight of a tree: `b . Phi(tree)`.
pub fn elementary_weight(tableau: &ButcherTableau, tree: &NonplanarTree) -> Rational {
    tableau
        .b
        .iter()
        .zip(stage_weights(tableau, tree))
        .map(|(b, phi)| b * phi)
        .sum()
}

/// The character with prescribed tree pairings: coefficients
/// `weight(t1) ... weight(tk) / sigma(forest)` on every nonplanar forest up
/// to the truncation. Every multiplicative functional on trees extends this
/// way, and the result is always a character.
pub fn multiplicative_character(
    n: usize,
    weight: impl Fn(&NonplanarTree) -> Rational,
) -> Series<NonplanarForest> {
    let mut acc = Series::zero(n);
    for d in 0..=n {
        for forest in crate::forest::nonplanar_forests(d) {
            let mut coefficient = Rational::from_integer(forest.symmetry_factor()).recip();
            for tree in forest.trees() {
                coefficient *= weight(tree);
            }
            acc.insert(forest, coefficient);
        }
    }
    acc
}

/// The character of the exact flow: tree pairings `1 / tree-factorial`.
pub fn exact_solution_character(n: usize) -> Series<NonplanarForest> {
    multiplicative_character(n, |tree| {
        Rational::from_integer(tree.tree_factorial()).recip()
    })
}

/// Result of the graded stage fixed point: the stage series and the number
/// of sweeps that changed something before stabilization.
#[derive(Debug, Clone)]
pub struct StageFixedPoint<F: ForestBasis> {
    /// One derivative series per stage.
    pub stages: Vec<Series<F>>,
    /// Sweeps performed until the stages stopped changing.
    pub iterations: usize,
}

/// Solves the stage equations `K_i = stage_map(sum_j a_ij K_j)` by graded
/// fixed-point iteration seeded at zero. Stages are updated in place, so
/// explicit tableaux settle in a single sweep; each sweep fixes at least one
/// further degree, so at most `n` sweeps change anything.
fn solve_stages<F: ForestBasis>(
    tableau: &ButcherTableau,
    n: usize,
    stage_map: impl Fn(&Series<F>) -> Series<F>,
) -> StageFixedPoint<F> {
    let s = tableau.stages();
    let mut stages: Vec<Series<F>> = vec![Series::zero(n); s];
    let mut iterations = 0;
    for sweep in 1..=n + 1 {
        let mut changed = false;
        for i in 0..s {
            let mut u = Series::zero(n);
            for (j, stage) in stages.iter().enumerate() {
                u.add_scaled_assign(stage, &tableau.a[i][j]);
            }
            let k = stage_map(&u);
            if k != stages[i] {
                stages[i] = k;
                changed = true;
            }
        }
        if !changed {
            break;
        }
        iterations = sweep;
    }
    StageFixedPoint { stages, iterations }
}

fn weighted_stage_sum<F: ForestBasis>(
    tableau: &ButcherTableau,
    fixed_point: &StageFixedPoint<F>,
    n: usize,
) -> Series<F> {
    let mut acc = Series::zero(n);
    for (b, stage) in tableau.b.iter().zip(&fixed_point.stages) {
        acc.add_scaled_assign(stage, b);
    }
    acc
}

/// The nonplanar stage fixed point of the scheme:
/// `K_i = exp(sum_j a_ij K_j) |> generator` in the pre-Lie basis.
pub fn rk_stages(tableau: &ButcherTableau, n: usize) -> StageFixedPoint<NonplanarForest> {
    let generator: Series<NonplanarForest> = Series::generator(n);
    solve_stages(tableau, n, |u| {
        let flow = exp_concat(u, n).expect("stage combinations are counit-free");
        left_graft(&flow, &generator)
    })
}

/// The classical Runge-Kutta character: `exp(sum_i b_i K_i)` over the
/// nonplanar stage series. Its pairing with any tree is the elementary
/// weight of that tree.
pub fn rk_character(tableau: &ButcherTableau, n: usize) -> Series<NonplanarForest> {
    let fixed_point = rk_stages(tableau, n);
    let combined = weighted_stage_sum(tableau, &fixed_point, n);
    exp_concat(&combined, n).expect("stage series are counit-free")
}

/// The planar (post-Lie) transplant of the same stage recursion, without any
/// correction. It matches the Grossman-Larson exponential only through
/// degree two — this is the obstruction that motivates the corrected scheme.
pub fn rk_postlie_character(tableau: &ButcherTableau, n: usize) -> Series<PlanarForest> {
    let generator: Series<PlanarForest> = Series::generator(n);
    let fixed_point = solve_stages(tableau, n, |u| {
        let flow = exp_concat(u, n).expect("stage combinations are counit-free");
        left_graft(&flow, &generator)
    });
    let combined = weighted_stage_sum(tableau, &fixed_point, n);
    exp_concat(&combined, n).expect("stage series are counit-free")
}

/// The Munthe-Kaas corrected character in the planar basis: stages solve
/// `K_i = dexpinv_{U_i}(exp(U_i) |> generator)` with `U_i = sum_j a_ij K_j`
/// (left-trivialized `dexpinv`), and the character is `exp(sum_i b_i K_i)`.
pub fn rkmk_character(tableau: &ButcherTableau, n: usize) -> Series<PlanarForest> {
    let generator: Series<PlanarForest> = Series::generator(n);
    let fixed_point = solve_stages(tableau, n, |u| {
        let flow = exp_concat(u, n).expect("stage combinations are counit-free");
        let grafted = left_graft(&flow, &generator);
        dexpinv_left(u, &grafted, n).expect("stage combinations are counit-free")
    });
    let combined = weighted_stage_sum(tableau, &fixed_point, n);
    exp_concat(&combined, n).expect("stage series are counit-free")
}

/// Summation indices used by the componentwise rendering, in assignment
/// order (`o` is skipped to avoid confusion with zero).
const INDEX_LETTERS: &[u8] = b"ijklmnpqrstuvwxyz";

/// A single order condition: the elementary weight of `tree` must equal
/// `1 / tree-factorial`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderCondition {
    tree: NonplanarTree,
    rhs: Rational,
}

impl OrderCondition {
    /// The condition attached to one tree.
    pub fn for_tree(tree: NonplanarTree) -> Self {
        let rhs = Rational::from_integer(tree.tree_factorial()).recip();
        OrderCondition { tree, rhs }
    }

    /// The indexing tree.
    pub fn tree(&self) -> &NonplanarTree {
        &self.tree
    }

    /// The right-hand side `1 / tree-factorial`.
    pub fn rhs(&self) -> &Rational {
        &self.rhs
    }

    /// The left-hand side for a concrete tableau.
    pub fn lhs(&self, tableau: &ButcherTableau) -> Rational {
        elementary_weight(tableau, &self.tree)
    }

    /// Whether the tableau satisfies this condition.
    pub fn holds_for(&self, tableau: &ButcherTableau) -> bool {
        self.lhs(tableau) == self.rhs
    }

    /// Compact rendering, e.g. `b(Ae·Ae) = 1/3` or `bA^2e = 1/6`.
    pub fn compact(&self) -> String {
        use core::fmt::Write;
        let mut out = String::from("b");
        let phi = PhiExpr::of(&self.tree);
        match &phi {
            PhiExpr::Ones => out.push('e'),
            PhiExpr::Product(factors) => {
                if factors.len() == 1 {
                    factors[0].render(&mut out);
                } else {
                    phi.render(&mut out);
                }
            }
        }
        let _ = write!(out, " = {}", render_rational(&self.rhs));
        out
    }

    /// Componentwise rendering, e.g. `Σ_ijk b_i a_ij a_ik = 1/3`.
    pub fn componentwise(&self) -> String {
        use core::fmt::Write;
        fn walk(
            tree: &NonplanarTree,
            parent: char,
            next: &mut usize,
            letters_used: &mut String,
            factors: &mut Vec<(char, char)>,
        ) {
            for child in tree.children() {
                let letter = INDEX_LETTERS[*next % INDEX_LETTERS.len()] as char;
                *next += 1;
                letters_used.push(letter);
                factors.push((parent, letter));
                walk(child, letter, next, letters_used, factors);
            }
        }
        let mut letters_used = String::new();
        let mut factors: Vec<(char, char)> = Vec::new();
        let mut next = 0usize;
        let root = INDEX_LETTERS[next] as char;
        next += 1;
        letters_used.push(root);
        walk(
            &self.tree,
            root,
            &mut next,
            &mut letters_used,
            &mut factors,
        );
        let mut out = String::new();
        let _ = write!(out, "Σ_{letters_used} b_{root}");
        for (p, c) in factors {
            let _ = write!(out, " a_{p}{c}");
        }
        let _ = write!(out, " = {}", render_rational(&self.rhs));
        out
    }
}

/// Symbolic form of a stage-weight vector, used only for rendering.
enum PhiExpr {
    /// The all-ones vector `e`.
    Ones,
    /// A Hadamard product of `A`-applications, one factor per branch.
    Product(Vec<PhiFactor>),
}

/// One factor `A^power(base)` of a stage-weight product.
struct PhiFactor {
    power: usize,
    base: PhiExpr,
}

impl PhiExpr {
    fn of(tree: &NonplanarTree) -> PhiExpr {
        if tree.children().is_empty() {
            return PhiExpr::Ones;
        }
        PhiExpr::Product(tree.children().iter().map(PhiFactor::of).collect())
    }

    fn render(&self, out: &mut String) {
        match self {
            PhiExpr::Ones => out.push('e'),
            PhiExpr::Product(factors) => {
                out.push('(');
                for (i, factor) in factors.iter().enumerate() {
                    if i > 0 {
                        out.push('·');
                    }
                    factor.render(out);
                }
                out.push(')');
            }
        }
    }
}

impl PhiFactor {
    fn of(tree: &NonplanarTree) -> PhiFactor {
        match PhiExpr::of(tree) {
            // A applied to a single factor collapses into a power
            PhiExpr::Product(mut factors) if factors.len() == 1 => {
                let inner = factors.pop().expect("length checked");
                PhiFactor {
                    power: inner.power + 1,
                    base: inner.base,
                }
            }
            other => PhiFactor {
                power: 1,
                base: other,
            },
        }
    }

    fn render(&self, out: &mut String) {
        use core::fmt::Write;
        if self.power == 1 {
            out.push('A');
        } else {
            let _ = write!(out, "A^{}", self.power);
        }
        match &self.base {
            PhiExpr::Ones => out.push('e'),
            product => product.render(out),
        }
    }
}

/// All order conditions for order `p`: one per nonplanar tree with at most
/// `p` nodes, sorted by degree and canonical tree order.
pub fn generate_order_conditions(p: usize) -> Vec<OrderCondition> {
    let mut out = Vec::new();
    for d in 1..=p {
        for tree in nonplanar_trees(d) {
            out.push(OrderCondition::for_tree(tree));
        }
    }
    out
}

/// The classical order of the tableau, capped at `p_max`: the largest `p`
/// such that every condition of degree up to `p` holds.
pub fn order_of_tableau(tableau: &ButcherTableau, p_max: usize) -> usize {
    for p in 1..=p_max {
        for tree in nonplanar_trees(p) {
            if !OrderCondition::for_tree(tree).holds_for(tableau) {
                return p - 1;
            }
        }
    }
    p_max
}

/// The first violated condition (by degree, then canonical order) among the
/// conditions of degree up to `p`, if any.
pub fn first_violation(tableau: &ButcherTableau, p: usize) -> Option<OrderCondition> {
    generate_order_conditions(p)
        .into_iter()
        .find(|condition| !condition.holds_for(tableau))
}

// ---------------------------------------------------------------------------
// Built-in tableaux
// ---------------------------------------------------------------------------

/// The explicit Euler method (one stage, order 1).
pub fn explicit_euler() -> ButcherTableau {
    ButcherTableau::new("euler", vec![vec![ratio(0, 1)]], vec![ratio(1, 1)])
        .expect("static tableau is well-formed")
}

/// The implicit midpoint rule (one stage, order 2).
pub fn implicit_midpoint() -> ButcherTableau {
    ButcherTableau::new("implicit-midpoint", vec![vec![ratio(1, 2)]], vec![ratio(1, 1)])
        .expect("static tableau is well-formed")
}

/// Heun's method (two stages, order 2).
pub fn heun() -> ButcherTableau {
    ButcherTableau::new(
        "heun2",
        vec![
            vec![ratio(0, 1), ratio(0, 1)],
            vec![ratio(1, 1), ratio(0, 1)],
        ],
        vec![ratio(1, 2), ratio(1, 2)],
    )
    .expect("static tableau is well-formed")
}

/// Kutta's third-order method (three stages, order 3).
pub fn kutta_third_order() -> ButcherTableau {
    ButcherTableau::new(
        "kutta3",
        vec![
            vec![ratio(0, 1), ratio(0, 1), ratio(0, 1)],
            vec![ratio(1, 2), ratio(0, 1), ratio(0, 1)],
            vec![ratio(-1, 1), ratio(2, 1), ratio(0, 1)],
        ],
        vec![ratio(1, 6), ratio(2, 3), ratio(1, 6)],
    )
    .expect("static tableau is well-formed")
}

/// The classical fourth-order Runge-Kutta method (four stages, order 4).
pub fn classical_rk4() -> ButcherTableau {
    let z = || ratio(0, 1);
    ButcherTableau::new(
        "rk4",
        vec![
            vec![z(), z(), z(), z()],
            vec![ratio(1, 2), z(), z(), z()],
            vec![z(), ratio(1, 2), z(), z()],
            vec![z(), z(), ratio(1, 1), z()],
        ],
        vec![ratio(1, 6), ratio(1, 3), ratio(1, 3), ratio(1, 6)],
    )
    .expect("static tableau is well-formed")
}

/// The built-in tableaux together with their classical orders.
pub fn catalog() -> Vec<(ButcherTableau, usize)> {
    vec![
        (explicit_euler(), 1),
        (implicit_midpoint(), 2),
        (heun(), 2),
        (kutta_third_order(), 3),
        (classical_rk4(), 4),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponential::exp_gl;
    use crate::forest::parse_nonplanar_tree;
    use crate::rational::integer;

    fn nt(s: &str) -> NonplanarTree {
        parse_nonplanar_tree(s).unwrap()
    }

    #[test]
    fn tableau_validation() {
        assert_eq!(
            ButcherTableau::new("empty", vec![], vec![]),
            Err(TableauError::Empty)
        );
        assert_eq!(
            ButcherTableau::new("ragged", vec![vec![integer(0)], vec![]], vec![integer(1)]),
            Err(TableauError::RaggedRow {
                row: 0,
                expected: 2,
                got: 1
            })
        );
        assert_eq!(
            ButcherTableau::new("short-b", vec![vec![integer(0)]], vec![]),
            Err(TableauError::WeightCount {
                expected: 1,
                got: 0
            })
        );
    }

    #[test]
    fn explicitness() {
        assert!(explicit_euler().is_explicit());
        assert!(classical_rk4().is_explicit());
        assert!(heun().is_explicit());
        assert!(!implicit_midpoint().is_explicit());
    }

    #[test]
    fn elementary_weights_of_small_trees() {
        let rk4 = classical_rk4();
        assert_eq!(elementary_weight(&rk4, &nt("[]")), integer(1));
        assert_eq!(elementary_weight(&rk4, &nt("[[]]")), ratio(1, 2));
        assert_eq!(elementary_weight(&rk4, &nt("[[][]]")), ratio(1, 3));
        assert_eq!(elementary_weight(&rk4, &nt("[[[]]]")), ratio(1, 6));
        let euler = explicit_euler();
        assert_eq!(elementary_weight(&euler, &nt("[]")), integer(1));
        assert_eq!(elementary_weight(&euler, &nt("[[]]")), integer(0));
    }

    #[test]
    fn classical_orders_of_the_catalog() {
        for (tableau, order) in catalog() {
            assert_eq!(
                order_of_tableau(&tableau, order + 1),
                order,
                "{}",
                tableau.name()
            );
        }
    }

    #[test]
    fn exact_solution_pairings_are_inverse_factorials() {
        let exact = exact_solution_character(5);
        assert_eq!(exact.counit(), integer(1));
        for d in 1..=5usize {
            for tree in nonplanar_trees(d) {
                let pairing = exact.pairing(&NonplanarForest::single(tree.clone()));
                assert_eq!(
                    pairing,
                    Rational::from_integer(tree.tree_factorial()).recip(),
                    "{tree}"
                );
            }
        }
        assert!(exact.is_character());
    }

    #[test]
    fn multiplicative_characters_are_characters() {
        // an arbitrary nontrivial weight assignment still yields a character
        let chi = multiplicative_character(4, |tree| {
            ratio(1, 1 + tree.degree() as i64)
        });
        assert!(chi.is_character());
    }

    #[test]
    fn euler_character_is_the_concatenation_exponential() {
        let euler = explicit_euler();
        let gen: Series<NonplanarForest> = Series::generator(4);
        let expected = exp_concat(&gen, 4).unwrap();
        assert_eq!(rk_character(&euler, 4), expected);
        // and the same holds in the planar variants, where the single stage
        // sees U = 0 and no correction is ever applied
        let gen: Series<PlanarForest> = Series::generator(4);
        let expected = exp_concat(&gen, 4).unwrap();
        assert_eq!(rk_postlie_character(&euler, 4), expected);
        assert_eq!(rkmk_character(&euler, 4), expected);
    }

    #[test]
    fn rk_character_pairings_are_elementary_weights() {
        for (tableau, _) in [(classical_rk4(), 4), (implicit_midpoint(), 2)] {
            let character = rk_character(&tableau, 4);
            for d in 1..=4usize {
                for tree in nonplanar_trees(d) {
                    assert_eq!(
                        character.pairing(&NonplanarForest::single(tree.clone())),
                        elementary_weight(&tableau, &tree),
                        "{} / {tree}",
                        tableau.name()
                    );
                }
            }
            // equivalently, the whole character is the multiplicative
            // extension of the elementary weights
            assert_eq!(
                character,
                multiplicative_character(4, |tree| elementary_weight(&tableau, tree))
            );
        }
    }

    #[test]
    fn stage_series_are_primitive() {
        let stages = rk_stages(&classical_rk4(), 4).stages;
        for stage in stages {
            assert!(stage.is_infinitesimal_character());
        }
    }

    #[test]
    fn implicit_stages_gain_one_degree_per_sweep() {
        for n in 1..=5 {
            let fixed_point = rk_stages(&implicit_midpoint(), n);
            assert_eq!(fixed_point.iterations, n, "truncation {n}");
        }
        // explicit tableaux settle in one sweep thanks to in-place updates
        assert_eq!(rk_stages(&classical_rk4(), 5).iterations, 1);
        assert_eq!(rk_stages(&explicit_euler(), 5).iterations, 1);
    }

    #[test]
    fn rk4_matches_the_exact_flow_through_order_four() {
        let character = rk_character(&classical_rk4(), 5);
        let exact = exact_solution_character(5);
        assert!(character.agrees_with(&exact, 4));
        assert!(!character.agrees_with(&exact, 5));
    }

    #[test]
    fn midpoint_matches_the_exact_flow_through_order_two() {
        let character = rk_character(&implicit_midpoint(), 3);
        let exact = exact_solution_character(3);
        assert!(character.agrees_with(&exact, 2));
        assert!(!character.agrees_with(&exact, 3));
    }

    #[test]
    fn rkmk_rk4_matches_the_gl_exponential_through_order_four() {
        let character = rkmk_character(&classical_rk4(), 4);
        let gen: Series<PlanarForest> = Series::generator(4);
        assert_eq!(character, exp_gl(&gen, 4).unwrap());
    }

    #[test]
    fn uncorrected_planar_transplant_fails_at_degree_three() {
        let character = rk_postlie_character(&classical_rk4(), 3);
        let gen: Series<PlanarForest> = Series::generator(3);
        let reference = exp_gl(&gen, 3).unwrap();
        assert!(character.agrees_with(&reference, 2));
        assert!(!character.agrees_with(&reference, 3));
    }

    #[test]
    fn order_conditions_match_the_condition_table() {
        let conditions = generate_order_conditions(4);
        assert_eq!(conditions.len(), 8);
        let rhs: Vec<String> = conditions
            .iter()
            .map(|c| render_rational(c.rhs()))
            .collect();
        assert_eq!(
            rhs,
            ["1", "1/2", "1/3", "1/6", "1/4", "1/8", "1/12", "1/24"]
        );
        let compact: Vec<String> = conditions.iter().map(|c| c.compact()).collect();
        assert_eq!(
            compact,
            [
                "be = 1",
                "bAe = 1/2",
                "b(Ae·Ae) = 1/3",
                "bA^2e = 1/6",
                "b(Ae·Ae·Ae) = 1/4",
                "b(Ae·A^2e) = 1/8",
                "bA(Ae·Ae) = 1/12",
                "bA^3e = 1/24",
            ]
        );
        let componentwise: Vec<String> =
            conditions.iter().map(|c| c.componentwise()).collect();
        assert_eq!(
            componentwise,
            [
                "Σ_i b_i = 1",
                "Σ_ij b_i a_ij = 1/2",
                "Σ_ijk b_i a_ij a_ik = 1/3",
                "Σ_ijk b_i a_ij a_jk = 1/6",
                "Σ_ijkl b_i a_ij a_ik a_il = 1/4",
                "Σ_ijkl b_i a_ij a_ik a_kl = 1/8",
                "Σ_ijkl b_i a_ij a_jk a_jl = 1/12",
                "Σ_ijkl b_i a_ij a_jk a_kl = 1/24",
            ]
        );
    }

    #[test]
    fn first_violation_reports_the_right_tree() {
        let euler = explicit_euler();
        let violation = first_violation(&euler, 4).expect("euler is not order 2");
        assert_eq!(violation.tree(), &nt("[[]]"));
        assert_eq!(violation.lhs(&euler), integer(0));
        assert_eq!(violation.rhs(), &ratio(1, 2));
        assert!(first_violation(&classical_rk4(), 4).is_none());
        assert!(first_violation(&classical_rk4(), 5).is_some());
    }
}

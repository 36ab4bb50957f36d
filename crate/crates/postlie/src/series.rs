//! Truncated formal series over a forest basis.
//!
//! A [`Series`] is a finite linear combination of basis forests with exact
//! rational coefficients, carrying a truncation degree `N`: every operation
//! discards terms of degree greater than `N`, so all computations happen in
//! the quotient by the ideal of high-degree terms. Linear operations keep the
//! truncation; binary products carry the smaller of the two truncations.
//!
//! The concatenation product makes the span of forests an associative algebra
//! (noncommutative on planar words, commutative on nonplanar multisets). The
//! coshuffle (unshuffle) coproduct is the morphism of algebras determined by
//! making single trees primitive; together they form the cocommutative Hopf
//! algebra whose group-like elements are *characters* and whose primitive
//! elements are *infinitesimal characters*.
//!
//! The pairing treats planar forests as an orthonormal basis; on nonplanar
//! forests it weights the diagonal with symmetry factors. This is the
//! bilinear form under which characters are evaluated in order theory.
//!
//! Text format: one term per line, `<coefficient>TAB<forest>`, sorted by
//! degree then canonical forest order; the zero series renders as the single
//! line `0`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::forest::{ForestBasis, ParseError};
use crate::rational::{parse_rational, render_rational, ParseRationalError, Rational};

/// Errors raised by operations that require a structural property of the
/// series (counit-freeness or primitivity).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesError {
    /// The operation requires a zero coefficient at the empty forest.
    NonzeroCounit,
    /// The operation requires a primitive series (an infinitesimal character).
    NotPrimitive,
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::NonzeroCounit => {
                write!(f, "series has a nonzero coefficient at the empty forest")
            }
            SeriesError::NotPrimitive => {
                write!(f, "series is not primitive (not an infinitesimal character)")
            }
        }
    }
}

impl core::error::Error for SeriesError {}

/// A truncated series: finitely many forests with nonzero rational
/// coefficients, all of degree at most the truncation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series<F: ForestBasis> {
    terms: BTreeMap<F, Rational>,
    truncation: usize,
}

impl<F: ForestBasis> Series<F> {
    /// The zero series at the given truncation.
    pub fn zero(truncation: usize) -> Self {
        Series {
            terms: BTreeMap::new(),
            truncation,
        }
    }

    /// The unit series: coefficient one at the empty forest.
    pub fn unit(truncation: usize) -> Self {
        Self::basis(F::unit(), truncation)
    }

    /// The generator series: coefficient one at the single-node tree.
    pub fn generator(truncation: usize) -> Self {
        Self::basis(F::single(F::leaf()), truncation)
    }

    /// The series with coefficient one at `forest`.
    pub fn basis(forest: F, truncation: usize) -> Self {
        let mut series = Self::zero(truncation);
        series.insert(forest, Rational::one());
        series
    }

    /// Builds a series from `(forest, coefficient)` pairs; repeated forests
    /// accumulate, zeros are pruned, and terms beyond the truncation are
    /// dropped.
    pub fn from_terms(
        terms: impl IntoIterator<Item = (F, Rational)>,
        truncation: usize,
    ) -> Self {
        let mut series = Self::zero(truncation);
        for (forest, coefficient) in terms {
            series.insert(forest, coefficient);
        }
        series
    }

    /// The truncation degree.
    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// Iterates over the nonzero terms in canonical order (degree-major).
    pub fn terms(&self) -> impl Iterator<Item = (&F, &Rational)> {
        self.terms.iter()
    }

    /// Number of nonzero terms.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The coefficient of `forest` (zero if absent).
    pub fn coefficient(&self, forest: &F) -> Rational {
        self.terms.get(forest).cloned().unwrap_or_else(Rational::zero)
    }

    /// Whether all coefficients vanish.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The largest degree carrying a nonzero term, if any.
    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(ForestBasis::degree).max()
    }

    /// Adds `other * scalar` in place (used by the algebra engines to avoid
    /// rebuilding maps term by term).
    pub(crate) fn add_scaled_assign(&mut self, other: &Self, scalar: &Rational) {
        if scalar.is_zero() {
            return;
        }
        for (f, c) in &other.terms {
            self.insert(f.clone(), c * scalar);
        }
    }

    /// Adds `coefficient * forest`, pruning zeros and respecting truncation.
    pub(crate) fn insert(&mut self, forest: F, coefficient: Rational) {
        use alloc::collections::btree_map::Entry;
        if coefficient.is_zero() || forest.degree() > self.truncation {
            return;
        }
        match self.terms.entry(forest) {
            Entry::Vacant(slot) => {
                slot.insert(coefficient);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coefficient;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// Sum; the result carries the smaller truncation.
    pub fn add(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.truncation.min(other.truncation));
        for (f, c) in self.terms.iter().chain(other.terms.iter()) {
            out.insert(f.clone(), c.clone());
        }
        out
    }

    /// Difference; the result carries the smaller truncation.
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    /// Scalar multiple.
    pub fn scale(&self, scalar: &Rational) -> Self {
        if scalar.is_zero() {
            return Self::zero(self.truncation);
        }
        Series {
            terms: self
                .terms
                .iter()
                .map(|(f, c)| (f.clone(), c * scalar))
                .collect(),
            truncation: self.truncation,
        }
    }

    /// Concatenation product (word product on planar forests, symmetric
    /// product on nonplanar ones); truncation is the smaller of the two.
    pub fn concat_product(&self, other: &Self) -> Self {
        let truncation = self.truncation.min(other.truncation);
        let mut out = Self::zero(truncation);
        for (f, c) in &self.terms {
            let df = f.degree();
            if df > truncation {
                continue;
            }
            for (g, d) in &other.terms {
                if df + g.degree() > truncation {
                    continue;
                }
                out.insert(f.concat(g), c * d);
            }
        }
        out
    }

    /// The part of the series in degree exactly `d`.
    pub fn component(&self, d: usize) -> Self {
        Series {
            terms: self
                .terms
                .iter()
                .filter(|(f, _)| f.degree() == d)
                .map(|(f, c)| (f.clone(), c.clone()))
                .collect(),
            truncation: self.truncation,
        }
    }

    /// Returns the same series carried at a different truncation degree,
    /// discarding terms beyond it. Raising the truncation treats the series
    /// as exact: absent high-degree terms stay absent.
    pub fn with_truncation(&self, truncation: usize) -> Self {
        Series {
            terms: self
                .terms
                .iter()
                .filter(|(f, _)| f.degree() <= truncation)
                .map(|(f, c)| (f.clone(), c.clone()))
                .collect(),
            truncation,
        }
    }

    /// Lowers the truncation to `d`, discarding higher terms.
    pub fn truncated(&self, d: usize) -> Self {
        Series {
            terms: self
                .terms
                .iter()
                .filter(|(f, _)| f.degree() <= d)
                .map(|(f, c)| (f.clone(), c.clone()))
                .collect(),
            truncation: d.min(self.truncation),
        }
    }

    /// The counit: the coefficient at the empty forest.
    pub fn counit(&self) -> Rational {
        self.coefficient(&F::unit())
    }

    /// The coshuffle (unshuffle) coproduct, extended linearly from
    /// `delta(t1...tk) = product of (ti (x) 1 + 1 (x) ti)`.
    pub fn coshuffle(&self) -> TensorSeries<F> {
        let mut out = TensorSeries::zero(self.truncation);
        for (forest, coefficient) in &self.terms {
            let trees = forest.trees();
            let k = trees.len();
            // every subset of tree positions goes left, the complement right
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
                out.insert(
                    F::from_trees(left),
                    F::from_trees(right),
                    coefficient.clone(),
                );
            }
        }
        out
    }

    /// The pairing of the series with a basis forest: the coefficient, times
    /// the symmetry factor on the nonplanar side.
    pub fn pairing(&self, forest: &F) -> Rational {
        self.coefficient(forest) * Rational::from_integer(forest.pairing_normalizer())
    }

    /// Whether the series is a character (group-like up to truncation):
    /// counit one and `delta(s) = s (x) s`.
    pub fn is_character(&self) -> bool {
        self.counit().is_one() && self.coshuffle() == TensorSeries::product_of(self, self)
    }

    /// Whether the series is an infinitesimal character (primitive up to
    /// truncation): `delta(s) = s (x) 1 + 1 (x) s`.
    pub fn is_infinitesimal_character(&self) -> bool {
        let unit = Self::unit(self.truncation);
        let expected =
            TensorSeries::product_of(self, &unit).add(&TensorSeries::product_of(&unit, self));
        self.coshuffle() == expected
    }

    /// Whether the two series have identical coefficients in every degree up
    /// to and including `through`.
    pub fn agrees_with(&self, other: &Self, through: usize) -> bool {
        self.truncated(through).terms == other.truncated(through).terms
    }

    /// Renders the series in the canonical text format.
    pub fn to_text(&self) -> String {
        use core::fmt::Write;
        if self.terms.is_empty() {
            return String::from("0\n");
        }
        let mut out = String::new();
        for (forest, coefficient) in &self.terms {
            let _ = writeln!(out, "{}\t{}", render_rational(coefficient), forest);
        }
        out
    }

    /// Parses the text format produced by [`Series::to_text`]. The truncation
    /// of the result is the largest degree present (zero for the zero
    /// series).
    pub fn parse_text(text: &str) -> Result<Self, SeriesTextError> {
        let lines: Vec<&str> = text.lines().collect();
        if lines.is_empty() {
            return Err(SeriesTextError {
                line: 1,
                kind: SeriesTextErrorKind::Empty,
            });
        }
        if lines == ["0"] {
            return Ok(Self::zero(0));
        }
        let mut terms = Vec::new();
        for (i, line) in lines.iter().enumerate() {
            let lineno = i + 1;
            let (coeff_text, forest_text) =
                line.split_once('\t').ok_or(SeriesTextError {
                    line: lineno,
                    kind: SeriesTextErrorKind::MissingTab,
                })?;
            let coefficient = parse_rational(coeff_text).map_err(|e| SeriesTextError {
                line: lineno,
                kind: SeriesTextErrorKind::Rational(e),
            })?;
            let forest = F::parse(forest_text).map_err(|e| SeriesTextError {
                line: lineno,
                kind: SeriesTextErrorKind::Forest(e),
            })?;
            terms.push((forest, coefficient));
        }
        let truncation = terms
            .iter()
            .map(|(f, _)| f.degree())
            .max()
            .unwrap_or(0);
        Ok(Self::from_terms(terms, truncation))
    }
}

impl Series<crate::forest::PlanarForest> {
    /// Projects onto the nonplanar basis by forgetting the ordering of every
    /// forest; coefficients of forests with the same underlying multiset add.
    pub fn to_nonplanar(&self) -> Series<crate::forest::NonplanarForest> {
        let mut out = Series::zero(self.truncation);
        for (forest, coefficient) in &self.terms {
            out.insert(forest.to_nonplanar(), coefficient.clone());
        }
        out
    }
}

/// Error produced when series text cannot be parsed, with a 1-based line
/// number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesTextError {
    /// 1-based line number of the offending line.
    pub line: usize,
    /// What went wrong on that line.
    pub kind: SeriesTextErrorKind,
}

/// The ways a series text line can be malformed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesTextErrorKind {
    /// The input had no lines at all.
    Empty,
    /// A line had no tab separating coefficient from forest.
    MissingTab,
    /// The coefficient was not a valid rational.
    Rational(ParseRationalError),
    /// The forest failed to parse.
    Forest(ParseError),
}

impl fmt::Display for SeriesTextError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: ", self.line)?;
        match &self.kind {
            SeriesTextErrorKind::Empty => write!(f, "empty input"),
            SeriesTextErrorKind::MissingTab => {
                write!(f, "expected `<coefficient>\\t<forest>`")
            }
            SeriesTextErrorKind::Rational(e) => write!(f, "{e}"),
            SeriesTextErrorKind::Forest(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for SeriesTextError {}

/// A truncated series in the tensor square of the forest algebra, used for
/// coproducts. Truncation bounds the *total* degree of each tensor pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorSeries<F: ForestBasis> {
    terms: BTreeMap<(F, F), Rational>,
    truncation: usize,
}

impl<F: ForestBasis> TensorSeries<F> {
    /// The zero tensor series.
    pub fn zero(truncation: usize) -> Self {
        TensorSeries {
            terms: BTreeMap::new(),
            truncation,
        }
    }

    /// The truncation degree (bound on total degree of a pair).
    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// Adds `coefficient * left (x) right`, pruning and truncating.
    pub fn insert(&mut self, left: F, right: F, coefficient: Rational) {
        use alloc::collections::btree_map::Entry;
        if coefficient.is_zero() || left.degree() + right.degree() > self.truncation {
            return;
        }
        match self.terms.entry((left, right)) {
            Entry::Vacant(slot) => {
                slot.insert(coefficient);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coefficient;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// The coefficient of `left (x) right`.
    pub fn coefficient(&self, left: &F, right: &F) -> Rational {
        self.terms
            .get(&(left.clone(), right.clone()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Iterates over nonzero terms.
    pub fn terms(&self) -> impl Iterator<Item = (&(F, F), &Rational)> {
        self.terms.iter()
    }

    /// Whether all coefficients vanish.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum; the result carries the smaller truncation.
    pub fn add(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.truncation.min(other.truncation));
        for ((l, r), c) in self.terms.iter().chain(other.terms.iter()) {
            out.insert(l.clone(), r.clone(), c.clone());
        }
        out
    }

    /// Difference.
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Scalar multiple.
    pub fn scale(&self, scalar: &Rational) -> Self {
        if scalar.is_zero() {
            return Self::zero(self.truncation);
        }
        TensorSeries {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c * scalar))
                .collect(),
            truncation: self.truncation,
        }
    }

    /// The outer product `a (x) b` of two plain series.
    pub fn product_of(a: &Series<F>, b: &Series<F>) -> Self {
        let mut out = Self::zero(a.truncation().min(b.truncation()));
        for (f, c) in a.terms() {
            for (g, d) in b.terms() {
                out.insert(f.clone(), g.clone(), c * d);
            }
        }
        out
    }

    /// Nonzero terms sorted for display: by total degree, then by left and
    /// right components in canonical order.
    pub fn sorted_terms(&self) -> Vec<(&F, &F, &Rational)> {
        let mut entries: Vec<(&F, &F, &Rational)> = self
            .terms
            .iter()
            .map(|((l, r), c)| (l, r, c))
            .collect();
        entries.sort_by(|a, b| {
            let da = a.0.degree() + a.1.degree();
            let db = b.0.degree() + b.1.degree();
            da.cmp(&db).then_with(|| (a.0, a.1).cmp(&(b.0, b.1)))
        });
        entries
    }

    /// Renders the tensor series, one term per line:
    /// `<coefficient>TAB<left>TAB<right>`; zero renders as `0`.
    pub fn to_text(&self) -> String {
        use core::fmt::Write;
        if self.terms.is_empty() {
            return String::from("0\n");
        }
        let mut out = String::new();
        for (left, right, coefficient) in self.sorted_terms() {
            let _ = writeln!(
                out,
                "{}\t{}\t{}",
                render_rational(coefficient),
                left,
                right
            );
        }
        out
    }
}

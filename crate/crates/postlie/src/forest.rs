//! Planar and nonplanar rooted trees, ordered forests, and their combinatorics.
//!
//! A *planar* rooted tree remembers the left-to-right order of the branches at
//! every node; a *nonplanar* tree does not. Planar trees index a basis of the
//! enveloping algebra of the free post-Lie algebra on one generator per label;
//! nonplanar trees play the same role for the free pre-Lie algebra, and are the
//! index set of classical Runge-Kutta order theory.
//!
//! Canonical order. Trees are totally ordered by degree first, then by
//! lexicographic comparison of (canonicalized) child sequences, then by label.
//! Nonplanar trees and forests are kept sorted by this order at construction
//! time, so structural equality coincides with equality of abstract trees.
//! Forests compare by degree first, then lexicographically tree by tree. All
//! rendering and enumeration follows this one order.
//!
//! Text grammar. A tree is `'[' tree* ']'` followed by an optional label
//! `'a'..'z'` (the default label `a` is omitted when rendering); a forest is
//! either `1` (the empty forest) or trees separated by single spaces.
//! `[[][]]` is the 3-node tree with two leaves, `[[[]]]` the 3-node chain.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::rational::factorial;

/// Generator label carried by every node, one of `'a'..='z'`.
///
/// Single-generator work uses the default label `a`, which the text form
/// omits; the remaining letters support multi-generator alphabets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(u8);

impl Label {
    /// The default generator label `a`.
    pub const DEFAULT: Label = Label(b'a');

    /// Creates a label from a lowercase ASCII letter.
    pub fn new(c: char) -> Option<Label> {
        c.is_ascii_lowercase().then_some(Label(c as u8))
    }

    /// The label as a character.
    pub fn as_char(self) -> char {
        self.0 as char
    }

    /// Whether this is the default label `a`.
    pub fn is_default(self) -> bool {
        self.0 == b'a'
    }
}

impl Default for Label {
    fn default() -> Self {
        Label::DEFAULT
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A planar rooted tree: branch order at each node is significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlanarTree {
    label: Label,
    children: Vec<PlanarTree>,
}

impl PlanarTree {
    /// The single-node tree with the default label.
    pub fn leaf() -> Self {
        PlanarTree {
            label: Label::DEFAULT,
            children: Vec::new(),
        }
    }

    /// A tree with the default label and the given ordered branches.
    pub fn node(children: Vec<PlanarTree>) -> Self {
        PlanarTree {
            label: Label::DEFAULT,
            children,
        }
    }

    /// A tree with an explicit label and ordered branches.
    pub fn new(label: Label, children: Vec<PlanarTree>) -> Self {
        PlanarTree { label, children }
    }

    /// The label at the root.
    pub fn label(&self) -> Label {
        self.label
    }

    /// The ordered branches at the root.
    pub fn children(&self) -> &[PlanarTree] {
        &self.children
    }

    /// Number of nodes.
    pub fn degree(&self) -> usize {
        1 + self.children.iter().map(PlanarTree::degree).sum::<usize>()
    }

    /// Forgets the planar embedding, yielding the canonical abstract tree.
    pub fn to_nonplanar(&self) -> NonplanarTree {
        NonplanarTree::new(
            self.label,
            self.children.iter().map(PlanarTree::to_nonplanar).collect(),
        )
    }
}

impl Ord for PlanarTree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.children.cmp(&other.children))
            .then_with(|| self.label.cmp(&other.label))
    }
}

impl PartialOrd for PlanarTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for child in &self.children {
            child.fmt(f)?;
        }
        write!(f, "]")?;
        if !self.label.is_default() {
            write!(f, "{}", self.label)?;
        }
        Ok(())
    }
}

/// An ordered forest of planar trees; the empty forest is the word unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PlanarForest {
    trees: Vec<PlanarTree>,
}

impl PlanarForest {
    /// The empty forest.
    pub fn empty() -> Self {
        PlanarForest { trees: Vec::new() }
    }

    /// The forest holding exactly one tree.
    pub fn single(tree: PlanarTree) -> Self {
        PlanarForest { trees: vec![tree] }
    }

    /// A forest from an ordered list of trees.
    pub fn from_trees(trees: Vec<PlanarTree>) -> Self {
        PlanarForest { trees }
    }

    /// The trees in left-to-right order.
    pub fn trees(&self) -> &[PlanarTree] {
        &self.trees
    }

    /// Total number of nodes.
    pub fn degree(&self) -> usize {
        self.trees.iter().map(PlanarTree::degree).sum()
    }

    /// Whether this is the empty forest.
    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    /// Word concatenation.
    pub fn concat(&self, other: &Self) -> Self {
        let mut trees = self.trees.clone();
        trees.extend(other.trees.iter().cloned());
        PlanarForest { trees }
    }

    /// Forgets all planar embeddings.
    pub fn to_nonplanar(&self) -> NonplanarForest {
        NonplanarForest::from_trees(self.trees.iter().map(PlanarTree::to_nonplanar).collect())
    }
}

impl Ord for PlanarForest {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.trees.cmp(&other.trees))
    }
}

impl PartialOrd for PlanarForest {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PlanarForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.trees.is_empty() {
            return write!(f, "1");
        }
        for (i, tree) in self.trees.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            tree.fmt(f)?;
        }
        Ok(())
    }
}

/// An abstract (nonplanar) rooted tree, kept in canonical form: the branches
/// at every node are sorted by the canonical tree order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NonplanarTree {
    label: Label,
    children: Vec<NonplanarTree>,
}

impl NonplanarTree {
    /// The single-node tree with the default label.
    pub fn leaf() -> Self {
        NonplanarTree {
            label: Label::DEFAULT,
            children: Vec::new(),
        }
    }

    /// A tree with the default label and the given branch multiset.
    pub fn node(children: Vec<NonplanarTree>) -> Self {
        Self::new(Label::DEFAULT, children)
    }

    /// A tree with an explicit label; the branches are sorted canonically.
    pub fn new(label: Label, mut children: Vec<NonplanarTree>) -> Self {
        children.sort();
        NonplanarTree { label, children }
    }

    /// The label at the root.
    pub fn label(&self) -> Label {
        self.label
    }

    /// The branches at the root, in canonical order.
    pub fn children(&self) -> &[NonplanarTree] {
        &self.children
    }

    /// Number of nodes.
    pub fn degree(&self) -> usize {
        1 + self
            .children
            .iter()
            .map(NonplanarTree::degree)
            .sum::<usize>()
    }

    /// The symmetry factor of the tree: the order of its automorphism group,
    /// equal to the symmetry factor of the forest of its branches.
    pub fn symmetry_factor(&self) -> BigInt {
        NonplanarForest {
            trees: self.children.clone(),
        }
        .symmetry_factor()
    }

    /// The tree factorial: degree times the factorials of all branches.
    pub fn tree_factorial(&self) -> BigInt {
        let mut acc = BigInt::from(self.degree());
        for child in &self.children {
            acc *= child.tree_factorial();
        }
        acc
    }
}

impl Ord for NonplanarTree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.children.cmp(&other.children))
            .then_with(|| self.label.cmp(&other.label))
    }
}

impl PartialOrd for NonplanarTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for NonplanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for child in &self.children {
            child.fmt(f)?;
        }
        write!(f, "]")?;
        if !self.label.is_default() {
            write!(f, "{}", self.label)?;
        }
        Ok(())
    }
}

/// A multiset of abstract trees, kept sorted canonically; the basis of the
/// symmetric algebra over nonplanar trees.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct NonplanarForest {
    trees: Vec<NonplanarTree>,
}

impl NonplanarForest {
    /// The empty forest.
    pub fn empty() -> Self {
        NonplanarForest { trees: Vec::new() }
    }

    /// The forest holding exactly one tree.
    pub fn single(tree: NonplanarTree) -> Self {
        NonplanarForest { trees: vec![tree] }
    }

    /// A forest from a list of trees; the list is sorted canonically.
    pub fn from_trees(mut trees: Vec<NonplanarTree>) -> Self {
        trees.sort();
        NonplanarForest { trees }
    }

    /// The trees in canonical order.
    pub fn trees(&self) -> &[NonplanarTree] {
        &self.trees
    }

    /// Total number of nodes.
    pub fn degree(&self) -> usize {
        self.trees.iter().map(NonplanarTree::degree).sum()
    }

    /// Whether this is the empty forest.
    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    /// Multiset union (the symmetric product of basis forests).
    pub fn concat(&self, other: &Self) -> Self {
        let mut trees = self.trees.clone();
        trees.extend(other.trees.iter().cloned());
        trees.sort();
        NonplanarForest { trees }
    }

    /// The symmetry factor `sigma`: for a forest `t1^m1 ... tk^mk` with
    /// distinct trees `ti`, the product of `sigma(ti)^mi * mi!`.
    pub fn symmetry_factor(&self) -> BigInt {
        let mut acc = BigInt::one();
        let mut i = 0;
        while i < self.trees.len() {
            let mut j = i + 1;
            while j < self.trees.len() && self.trees[j] == self.trees[i] {
                j += 1;
            }
            let multiplicity = j - i;
            acc *= self.trees[i].symmetry_factor().pow(multiplicity as u32);
            acc *= factorial(multiplicity);
            i = j;
        }
        acc
    }
}

impl Ord for NonplanarForest {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.trees.cmp(&other.trees))
    }
}

impl PartialOrd for NonplanarForest {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for NonplanarForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.trees.is_empty() {
            return write!(f, "1");
        }
        for (i, tree) in self.trees.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            tree.fmt(f)?;
        }
        Ok(())
    }
}

/// Common interface of the two forest bases (planar words and nonplanar
/// multisets), used by the series and grafting machinery so that both the
/// post-Lie and the pre-Lie side run through one code path.
///
/// Using distinct key types per basis makes mixing bases a compile error
/// rather than a runtime one.
pub trait ForestBasis: Clone + Ord + Eq + fmt::Display + fmt::Debug {
    /// The tree type indexing single letters of the basis.
    type Tree: Clone + Ord + Eq + fmt::Display + fmt::Debug;

    /// The empty forest (unit of the concatenation product).
    fn unit() -> Self;
    /// The single-node tree with the default label.
    fn leaf() -> Self::Tree;
    /// The forest holding one tree.
    fn single(tree: Self::Tree) -> Self;
    /// A forest assembled from trees (canonicalized where applicable).
    fn from_trees(trees: Vec<Self::Tree>) -> Self;
    /// The trees of the forest, in basis order.
    fn trees(&self) -> &[Self::Tree];
    /// Number of nodes of a tree.
    fn tree_degree(tree: &Self::Tree) -> usize;
    /// Concatenation (word product or multiset union).
    fn concat(&self, other: &Self) -> Self;
    /// Attaches a new root below the whole forest.
    fn b_plus(&self) -> Self::Tree;
    /// Removes the root of a tree, leaving the forest of its branches.
    fn b_minus(tree: &Self::Tree) -> Self;
    /// Grafts `scion` onto every node of `target`, one result per node (in
    /// the planar case the scion becomes the new leftmost branch).
    fn graft_at_nodes(scion: &Self::Tree, target: &Self::Tree) -> Vec<Self::Tree>;
    /// Normalizer of the pairing on this basis: `1` for planar forests
    /// (orthonormal basis), the symmetry factor for nonplanar forests.
    fn pairing_normalizer(&self) -> BigInt;
    /// Parses the text form of a forest.
    fn parse(text: &str) -> Result<Self, ParseError>;

    /// Total number of nodes of the forest.
    fn degree(&self) -> usize {
        self.trees()
            .iter()
            .map(|t| Self::tree_degree(t))
            .sum::<usize>()
    }

    /// Whether this is the empty forest.
    fn is_unit(&self) -> bool {
        self.trees().is_empty()
    }
}

impl ForestBasis for PlanarForest {
    type Tree = PlanarTree;

    fn unit() -> Self {
        PlanarForest::empty()
    }

    fn leaf() -> PlanarTree {
        PlanarTree::leaf()
    }

    fn single(tree: PlanarTree) -> Self {
        PlanarForest::single(tree)
    }

    fn from_trees(trees: Vec<PlanarTree>) -> Self {
        PlanarForest::from_trees(trees)
    }

    fn trees(&self) -> &[PlanarTree] {
        self.trees()
    }

    fn tree_degree(tree: &PlanarTree) -> usize {
        tree.degree()
    }

    fn concat(&self, other: &Self) -> Self {
        self.concat(other)
    }

    fn b_plus(&self) -> PlanarTree {
        PlanarTree::node(self.trees.clone())
    }

    fn b_minus(tree: &PlanarTree) -> Self {
        PlanarForest::from_trees(tree.children.clone())
    }

    fn graft_at_nodes(scion: &PlanarTree, target: &PlanarTree) -> Vec<PlanarTree> {
        let mut out = Vec::with_capacity(target.degree());
        let mut at_root = Vec::with_capacity(target.children.len() + 1);
        at_root.push(scion.clone());
        at_root.extend(target.children.iter().cloned());
        out.push(PlanarTree::new(target.label, at_root));
        for (i, child) in target.children.iter().enumerate() {
            for variant in Self::graft_at_nodes(scion, child) {
                let mut kids = target.children.clone();
                kids[i] = variant;
                out.push(PlanarTree::new(target.label, kids));
            }
        }
        out
    }

    fn pairing_normalizer(&self) -> BigInt {
        BigInt::one()
    }

    fn parse(text: &str) -> Result<Self, ParseError> {
        parse_planar_forest(text)
    }
}

impl ForestBasis for NonplanarForest {
    type Tree = NonplanarTree;

    fn unit() -> Self {
        NonplanarForest::empty()
    }

    fn leaf() -> NonplanarTree {
        NonplanarTree::leaf()
    }

    fn single(tree: NonplanarTree) -> Self {
        NonplanarForest::single(tree)
    }

    fn from_trees(trees: Vec<NonplanarTree>) -> Self {
        NonplanarForest::from_trees(trees)
    }

    fn trees(&self) -> &[NonplanarTree] {
        self.trees()
    }

    fn tree_degree(tree: &NonplanarTree) -> usize {
        tree.degree()
    }

    fn concat(&self, other: &Self) -> Self {
        self.concat(other)
    }

    fn b_plus(&self) -> NonplanarTree {
        NonplanarTree::new(Label::DEFAULT, self.trees.clone())
    }

    fn b_minus(tree: &NonplanarTree) -> Self {
        NonplanarForest {
            trees: tree.children.clone(),
        }
    }

    fn graft_at_nodes(scion: &NonplanarTree, target: &NonplanarTree) -> Vec<NonplanarTree> {
        let mut out = Vec::with_capacity(target.degree());
        let mut at_root = target.children.clone();
        at_root.push(scion.clone());
        out.push(NonplanarTree::new(target.label, at_root));
        for (i, child) in target.children.iter().enumerate() {
            for variant in Self::graft_at_nodes(scion, child) {
                let mut kids = target.children.clone();
                kids[i] = variant;
                out.push(NonplanarTree::new(target.label, kids));
            }
        }
        out
    }

    fn pairing_normalizer(&self) -> BigInt {
        self.symmetry_factor()
    }

    fn parse(text: &str) -> Result<Self, ParseError> {
        parse_nonplanar_forest(text)
    }
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

/// All planar trees with exactly `n` nodes, in canonical order.
///
/// The counts follow the Catalan numbers: 1, 1, 2, 5, 14, 42, ...
///
/// # Panics
///
/// Panics if `n == 0`.
pub fn planar_trees(n: usize) -> Vec<PlanarTree> {
    assert!(n >= 1, "trees have at least one node");
    planar_tables(n).0.pop().unwrap()
}

/// All ordered forests of planar trees with exactly `n` nodes (`n = 0` gives
/// the empty forest), in canonical order.
pub fn planar_forests(n: usize) -> Vec<PlanarForest> {
    planar_tables(n).1.pop().unwrap()
}

/// Degree-indexed tables of planar trees and forests up to degree `n`.
fn planar_tables(n: usize) -> (Vec<Vec<PlanarTree>>, Vec<Vec<PlanarForest>>) {
    let mut trees: Vec<Vec<PlanarTree>> = vec![Vec::new()];
    let mut forests: Vec<Vec<PlanarForest>> = vec![vec![PlanarForest::empty()]];
    for d in 1..=n {
        trees.push(forests[d - 1].iter().map(ForestBasis::b_plus).collect());
        let mut at_d = Vec::new();
        for first in 1..=d {
            for tree in &trees[first] {
                for rest in &forests[d - first] {
                    let mut all = Vec::with_capacity(1 + rest.trees().len());
                    all.push(tree.clone());
                    all.extend(rest.trees().iter().cloned());
                    at_d.push(PlanarForest::from_trees(all));
                }
            }
        }
        at_d.sort();
        forests.push(at_d);
    }
    (trees, forests)
}

/// All nonplanar trees with exactly `n` nodes, in canonical order.
///
/// The counts follow the rooted-tree numbers: 1, 1, 2, 4, 9, 20, ...
///
/// # Panics
///
/// Panics if `n == 0`.
pub fn nonplanar_trees(n: usize) -> Vec<NonplanarTree> {
    assert!(n >= 1, "trees have at least one node");
    nonplanar_tables(n).0.pop().unwrap()
}

/// All multisets of nonplanar trees with exactly `n` nodes (`n = 0` gives the
/// empty forest), in canonical order.
pub fn nonplanar_forests(n: usize) -> Vec<NonplanarForest> {
    nonplanar_tables(n).1.pop().unwrap()
}

/// Degree-indexed tables of nonplanar trees and forests up to degree `n`.
/// Forests are generated as non-decreasing tree sequences, so each multiset
/// appears exactly once.
fn nonplanar_tables(n: usize) -> (Vec<Vec<NonplanarTree>>, Vec<Vec<NonplanarForest>>) {
    let mut trees: Vec<Vec<NonplanarTree>> = vec![Vec::new()];
    let mut forests: Vec<Vec<NonplanarForest>> = vec![vec![NonplanarForest::empty()]];
    for d in 1..=n {
        trees.push(forests[d - 1].iter().map(ForestBasis::b_plus).collect());
        let mut at_d = Vec::new();
        for first in 1..=d {
            for tree in &trees[first] {
                for rest in &forests[d - first] {
                    if rest.trees().first().is_some_and(|r| r < tree) {
                        continue;
                    }
                    let mut all = Vec::with_capacity(1 + rest.trees().len());
                    all.push(tree.clone());
                    all.extend(rest.trees().iter().cloned());
                    at_d.push(NonplanarForest::from_trees(all));
                }
            }
        }
        at_d.sort();
        forests.push(at_d);
    }
    (trees, forests)
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

/// Error describing why a tree or forest string failed to parse, with the
/// byte offset at which parsing stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input at which the error occurred.
    pub position: usize,
    /// What went wrong at that offset.
    pub kind: ParseErrorKind,
}

/// The ways a tree or forest string can be malformed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// The input was empty.
    Empty,
    /// The input ended in the middle of a tree.
    UnexpectedEnd,
    /// A byte outside the grammar appeared.
    UnexpectedByte(u8),
    /// A complete value was followed by extra input.
    Trailing,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: ", self.position)?;
        match self.kind {
            ParseErrorKind::Empty => write!(f, "empty input"),
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of input"),
            ParseErrorKind::UnexpectedByte(b) => {
                if b.is_ascii_graphic() || b == b' ' {
                    write!(f, "unexpected character `{}`", b as char)
                } else {
                    write!(f, "unexpected byte 0x{b:02x}")
                }
            }
            ParseErrorKind::Trailing => write!(f, "trailing input after complete value"),
        }
    }
}

impl core::error::Error for ParseError {}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            position: self.pos,
            kind,
        }
    }

    fn tree(&mut self) -> Result<PlanarTree, ParseError> {
        match self.peek() {
            Some(b'[') => self.pos += 1,
            Some(b) => return Err(self.error(ParseErrorKind::UnexpectedByte(b))),
            None => return Err(self.error(ParseErrorKind::UnexpectedEnd)),
        }
        let mut children = Vec::new();
        loop {
            match self.peek() {
                Some(b'[') => children.push(self.tree()?),
                Some(b']') => {
                    self.pos += 1;
                    break;
                }
                Some(b) => return Err(self.error(ParseErrorKind::UnexpectedByte(b))),
                None => return Err(self.error(ParseErrorKind::UnexpectedEnd)),
            }
        }
        let label = match self.peek() {
            Some(b) if b.is_ascii_lowercase() => {
                self.pos += 1;
                Label(b)
            }
            _ => Label::DEFAULT,
        };
        Ok(PlanarTree::new(label, children))
    }

    fn forest(&mut self) -> Result<PlanarForest, ParseError> {
        if self.bytes.is_empty() {
            return Err(self.error(ParseErrorKind::Empty));
        }
        if self.bytes == b"1" {
            self.pos = 1;
            return Ok(PlanarForest::empty());
        }
        let mut trees = vec![self.tree()?];
        loop {
            match self.peek() {
                None => break,
                Some(b' ') => {
                    self.pos += 1;
                    trees.push(self.tree()?);
                }
                Some(_) => return Err(self.error(ParseErrorKind::Trailing)),
            }
        }
        Ok(PlanarForest::from_trees(trees))
    }
}

/// Parses a single planar tree; the whole input must be consumed.
pub fn parse_planar_tree(text: &str) -> Result<PlanarTree, ParseError> {
    let mut cursor = Cursor::new(text);
    if cursor.bytes.is_empty() {
        return Err(cursor.error(ParseErrorKind::Empty));
    }
    let tree = cursor.tree()?;
    if cursor.pos != cursor.bytes.len() {
        return Err(cursor.error(ParseErrorKind::Trailing));
    }
    Ok(tree)
}

/// Parses a planar forest: `1` or space-separated trees.
pub fn parse_planar_forest(text: &str) -> Result<PlanarForest, ParseError> {
    Cursor::new(text).forest()
}

/// Parses a tree and forgets its planar embedding.
pub fn parse_nonplanar_tree(text: &str) -> Result<NonplanarTree, ParseError> {
    Ok(parse_planar_tree(text)?.to_nonplanar())
}

/// Parses a forest and forgets all planar embeddings.
pub fn parse_nonplanar_forest(text: &str) -> Result<NonplanarForest, ParseError> {
    Ok(parse_planar_forest(text)?.to_nonplanar())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn pt(s: &str) -> PlanarTree {
        parse_planar_tree(s).unwrap()
    }

    fn pf(s: &str) -> PlanarForest {
        parse_planar_forest(s).unwrap()
    }

    fn nt(s: &str) -> NonplanarTree {
        parse_nonplanar_tree(s).unwrap()
    }

    fn nf(s: &str) -> NonplanarForest {
        parse_nonplanar_forest(s).unwrap()
    }

    #[test]
    fn display_round_trips() {
        for s in ["[]", "[[]]", "[[][]]", "[[[]][]]", "[[][[]]]", "[[[[]]]]"] {
            assert_eq!(pt(s).to_string(), s);
        }
        for s in ["1", "[]", "[] []", "[[]] [] [[][]]"] {
            assert_eq!(pf(s).to_string(), s);
        }
    }

    #[test]
    fn labels_parse_and_render() {
        let t = pt("[[]b[]]c");
        assert_eq!(t.label(), Label::new('c').unwrap());
        assert_eq!(t.children()[0].label(), Label::new('b').unwrap());
        assert_eq!(t.children()[1].label(), Label::DEFAULT);
        assert_eq!(t.to_string(), "[[]b[]]c");
        // the default label may be written explicitly but is never rendered
        assert_eq!(pt("[]a").to_string(), "[]");
        assert_eq!(pt("[]a"), pt("[]"));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let cases = [
            ("", 0, ParseErrorKind::Empty),
            ("[", 1, ParseErrorKind::UnexpectedEnd),
            ("[]]", 2, ParseErrorKind::Trailing),
            ("[x]", 1, ParseErrorKind::UnexpectedByte(b'x')),
            ("[]  []", 3, ParseErrorKind::UnexpectedByte(b' ')),
            ("[] ", 3, ParseErrorKind::UnexpectedEnd),
            ("[]b2", 3, ParseErrorKind::Trailing),
        ];
        for (input, position, kind) in cases {
            let err = parse_planar_forest(input).unwrap_err();
            assert_eq!((err.position, err.kind), (position, kind), "input {input:?}");
        }
        // the unit forest cannot be concatenated with trees textually
        assert!(parse_planar_forest("1 []").is_err());
        assert!(parse_planar_tree("[] []").is_err());
    }

    #[test]
    fn b_plus_and_b_minus_are_mutually_inverse() {
        assert_eq!(PlanarForest::empty().b_plus(), pt("[]"));
        assert_eq!(pf("[] []").b_plus(), pt("[[][]]"));
        assert_eq!(pf("[[]]").b_plus(), pt("[[[]]]"));
        assert_eq!(PlanarForest::b_minus(&pt("[[][[]]]")), pf("[] [[]]"));
        for n in 0..=6 {
            for forest in planar_forests(n) {
                assert_eq!(PlanarForest::b_minus(&forest.b_plus()), forest);
            }
        }
        for n in 1..=7 {
            for tree in planar_trees(n) {
                assert_eq!(PlanarForest::b_minus(&tree).b_plus(), tree);
            }
        }
    }

    #[test]
    fn planar_counts_are_catalan() {
        let expected = [1usize, 1, 2, 5, 14, 42];
        for (i, want) in expected.iter().enumerate() {
            assert_eq!(planar_trees(i + 1).len(), *want, "n = {}", i + 1);
        }
        // forests of degree n are counted by the same sequence shifted by one
        assert_eq!(planar_forests(0).len(), 1);
        assert_eq!(planar_forests(3).len(), 5);
        assert_eq!(planar_forests(5).len(), 42);
    }

    #[test]
    fn nonplanar_counts_are_rooted_tree_numbers() {
        let expected = [1usize, 1, 2, 4, 9, 20];
        for (i, want) in expected.iter().enumerate() {
            assert_eq!(nonplanar_trees(i + 1).len(), *want, "n = {}", i + 1);
        }
    }

    #[test]
    fn canonical_order_puts_bushier_trees_first() {
        let degree3 = planar_trees(3);
        assert_eq!(degree3[0], pt("[[][]]"));
        assert_eq!(degree3[1], pt("[[[]]]"));
        let degree4: Vec<String> = nonplanar_trees(4).iter().map(|t| t.to_string()).collect();
        assert_eq!(degree4, ["[[][][]]", "[[][[]]]", "[[[][]]]", "[[[[]]]]"]);
    }

    #[test]
    fn enumerations_are_sorted_and_distinct() {
        for n in 1..=6 {
            let trees = planar_trees(n);
            assert!(trees.windows(2).all(|w| w[0] < w[1]), "planar n = {n}");
            let trees = nonplanar_trees(n);
            assert!(trees.windows(2).all(|w| w[0] < w[1]), "nonplanar n = {n}");
        }
        for n in 0..=6 {
            let forests = planar_forests(n);
            assert!(forests.windows(2).all(|w| w[0] < w[1]));
            let forests = nonplanar_forests(n);
            assert!(forests.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn nonplanar_projection_identifies_planar_orbits() {
        assert_eq!(nt("[[[]][]]"), nt("[[][[]]]"));
        assert_ne!(nt("[[][]]"), nt("[[[]]]"));
        // the projection of all planar trees covers exactly the nonplanar ones
        for n in 1..=6 {
            let mut images: Vec<NonplanarTree> =
                planar_trees(n).iter().map(PlanarTree::to_nonplanar).collect();
            images.sort();
            images.dedup();
            assert_eq!(images, nonplanar_trees(n), "n = {n}");
        }
    }

    #[test]
    fn symmetry_factors() {
        assert_eq!(nf("1").symmetry_factor(), BigInt::from(1));
        assert_eq!(nf("[]").symmetry_factor(), BigInt::from(1));
        assert_eq!(nf("[] []").symmetry_factor(), BigInt::from(2));
        assert_eq!(nf("[] [] []").symmetry_factor(), BigInt::from(6));
        assert_eq!(nf("[] [[]]").symmetry_factor(), BigInt::from(1));
        assert_eq!(nt("[[][]]").symmetry_factor(), BigInt::from(2));
        assert_eq!(nt("[[][][]]").symmetry_factor(), BigInt::from(6));
        assert_eq!(nt("[[][[]]]").symmetry_factor(), BigInt::from(1));
        assert_eq!(nf("[[][]] [[][]]").symmetry_factor(), BigInt::from(8));
    }

    #[test]
    fn symmetry_factor_is_multiplicative_on_distinct_trees() {
        let a = nf("[[]]");
        let b = nf("[[][]]");
        assert_eq!(
            a.concat(&b).symmetry_factor(),
            a.symmetry_factor() * b.symmetry_factor()
        );
    }

    #[test]
    fn symmetry_factor_is_stable_under_b_plus() {
        for n in 0..=5 {
            for forest in nonplanar_forests(n) {
                assert_eq!(
                    NonplanarForest::single(forest.b_plus()).symmetry_factor(),
                    forest.symmetry_factor()
                );
            }
        }
    }

    #[test]
    fn tree_factorials() {
        assert_eq!(nt("[]").tree_factorial(), BigInt::from(1));
        assert_eq!(nt("[[]]").tree_factorial(), BigInt::from(2));
        assert_eq!(nt("[[][]]").tree_factorial(), BigInt::from(3));
        assert_eq!(nt("[[[]]]").tree_factorial(), BigInt::from(6));
        assert_eq!(nt("[[][[]]]").tree_factorial(), BigInt::from(8));
        // chains have factorial n!, corollas have factorial n
        let mut chain = String::new();
        for n in 1..=6 {
            chain = alloc::format!("[{chain}]");
            assert_eq!(nt(&chain).tree_factorial(), factorial(n));
            let corolla =
                NonplanarTree::node((1..n).map(|_| NonplanarTree::leaf()).collect());
            assert_eq!(corolla.tree_factorial(), BigInt::from(n));
        }
    }

    #[test]
    fn tree_factorial_bounds() {
        // 1 <= tau! <= |tau|! with the chain maximizing and the corolla minimizing
        for n in 1..=6 {
            for tree in nonplanar_trees(n) {
                let tf = tree.tree_factorial();
                assert!(tf >= BigInt::from(n));
                assert!(tf <= factorial(n));
            }
        }
    }

    #[test]
    fn graft_at_nodes_visits_every_node_once() {
        let results = PlanarForest::graft_at_nodes(&pt("[[]]"), &pt("[[][]]"));
        assert_eq!(results.len(), 3);
        assert_eq!(results[0], pt("[[[]][][]]"));
        assert_eq!(results[1], pt("[[[[]]][]]"));
        assert_eq!(results[2], pt("[[][[[]]]]"));
    }

    #[test]
    fn planar_graft_inserts_leftmost() {
        // grafting at the root always puts the scion before existing branches
        let results = PlanarForest::graft_at_nodes(&pt("[]"), &pt("[[]]"));
        assert_eq!(results[0], pt("[[][]]"));
        assert_eq!(results[1], pt("[[[]]]"));
    }

    #[test]
    fn nonplanar_graft_collects_multiplicities() {
        let results = NonplanarForest::graft_at_nodes(&nt("[[]]"), &nt("[[][]]"));
        assert_eq!(results.len(), 3);
        // grafting onto either leaf yields the same abstract tree
        assert_eq!(results[1], results[2]);
    }
}

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::{matrix_to_triple, sl2_act, ClassicalTriple, IntMat2, SymMat2};
use crate::error::Result;
use crate::qarith::Fraction;

/// Number of levels before branching starts: `(0,-1,1)`, `(2,0,2)`, `(4,3,5)`.
pub const STEM_LEVELS: usize = 3;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Gen {
    R,
    L,
}

impl Gen {
    pub fn matrix(self) -> IntMat2 {
        match self {
            Gen::R => IntMat2::R,
            Gen::L => IntMat2::L,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Gen::R => 'R',
            Gen::L => 'L',
        }
    }
}

/// Generators in the order they are applied, starting from the root.
pub type Word = Vec<Gen>;

pub fn word_string(w: &[Gen]) -> String {
    w.iter().map(|g| g.letter()).collect()
}

/// Levels of a binary tree hanging from a two-edge stem.
///
/// `levels[0..3]` hold one node each; from `levels[2]` on, the children of
/// `levels[k][i]` are `levels[k+1][2i]` (left) and `levels[k+1][2i+1]` (right).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tree<T> {
    levels: Vec<Vec<T>>,
}

impl<T> Tree<T> {
    pub fn from_levels(levels: Vec<Vec<T>>) -> Self {
        Tree { levels }
    }

    pub fn levels(&self) -> &[Vec<T>] {
        &self.levels
    }

    /// Branching levels below the first nontrivial node.
    pub fn depth(&self) -> usize {
        self.levels.len().saturating_sub(STEM_LEVELS)
    }

    /// Row `k` counted from the first nontrivial node (`k = 0`).
    pub fn row(&self, k: usize) -> Option<&[T]> {
        self.levels.get(STEM_LEVELS - 1 + k).map(Vec::as_slice)
    }

    pub fn root(&self) -> Option<&T> {
        self.levels.first().and_then(|l| l.first())
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.levels.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn try_map<U, E, F>(&self, f: F) -> std::result::Result<Tree<U>, E>
    where
        T: Sync,
        U: Send,
        E: Send,
        F: Fn(&T) -> std::result::Result<U, E> + Sync,
    {
        let levels = self
            .levels
            .iter()
            .map(|l| l.par_iter().map(&f).collect())
            .collect::<std::result::Result<_, E>>()?;
        Ok(Tree { levels })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum NodeFraction {
    /// The root, whose matrix factors through `(0, 1)`.
    Degenerate,
    Ratio(Fraction),
}

impl NodeFraction {
    pub fn fraction(&self) -> Option<Fraction> {
        match self {
            NodeFraction::Degenerate => None,
            NodeFraction::Ratio(f) => Some(*f),
        }
    }
}

impl fmt::Display for NodeFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeFraction::Degenerate => f.write_str("degenerate"),
            NodeFraction::Ratio(r) => r.fmt(f),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TreeNode {
    pub word: Word,
    pub matrix: SymMat2,
    pub triple: ClassicalTriple,
    pub fraction: NodeFraction,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct TreeNodeRecord {
    pub word: String,
    pub triple: [i128; 3],
    pub fraction: Option<String>,
}

impl TreeNode {
    fn from_matrix(word: Word, matrix: SymMat2) -> Self {
        let fraction = match matrix.factor() {
            Some((p, r)) if p != 0 && r != 0 => {
                let (p, r) = (p.unsigned_abs() as u64, r.unsigned_abs() as u64);
                let (hi, lo) = if p >= r { (p, r) } else { (r, p) };
                Fraction::new(hi, lo).map_or(NodeFraction::Degenerate, NodeFraction::Ratio)
            }
            _ => NodeFraction::Degenerate,
        };
        TreeNode {
            triple: matrix_to_triple(&matrix),
            word,
            matrix,
            fraction,
        }
    }

    fn child(&self, g: Gen) -> Result<TreeNode> {
        let matrix = sl2_act(&g.matrix(), &self.matrix)?;
        let mut word = self.word.clone();
        word.push(g);
        Ok(TreeNode::from_matrix(word, matrix))
    }

    pub fn record(&self) -> TreeNodeRecord {
        TreeNodeRecord {
            word: word_string(&self.word),
            triple: self.triple.displayed(),
            fraction: self.fraction.fraction().map(|f| f.to_string()),
        }
    }
}

/// The tree of standard triples: root `(0,-1,1)`, stem `R, R`, then `depth`
/// levels of left (`L`) and right (`R`) children.
pub fn pythagorean_tree(depth: usize) -> Result<Tree<TreeNode>> {
    let root = TreeNode::from_matrix(Vec::new(), SymMat2::new(0, 0, 1)?);
    let s1 = root.child(Gen::R)?;
    let s2 = s1.child(Gen::R)?;
    let mut levels = vec![vec![root], vec![s1], vec![s2]];
    for _ in 0..depth {
        let last = levels.last().expect("stem present");
        let next: Vec<TreeNode> = last
            .par_iter()
            .flat_map_iter(|n| [n.child(Gen::L), n.child(Gen::R)])
            .collect::<Result<_>>()?;
        levels.push(next);
    }
    Ok(Tree::from_levels(levels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triples::euclid_triple;

    fn row(tree: &Tree<TreeNode>, k: usize) -> Vec<[i128; 3]> {
        tree.row(k)
            .unwrap()
            .iter()
            .map(|n| n.triple.displayed())
            .collect()
    }

    #[test]
    fn stem() {
        let t = pythagorean_tree(0).unwrap();
        assert_eq!(t.depth(), 0);
        let l = t.levels();
        assert_eq!(l[0][0].triple, ClassicalTriple::new(0, -1, 1));
        assert_eq!(l[0][0].fraction, NodeFraction::Degenerate);
        assert_eq!(l[1][0].triple, ClassicalTriple::new(2, 0, 2));
        assert_eq!(l[1][0].fraction, NodeFraction::Ratio(Fraction::ONE));
        assert_eq!(l[2][0].triple, ClassicalTriple::new(4, 3, 5));
        assert_eq!(word_string(&l[2][0].word), "RR");
    }

    #[test]
    fn first_rows() {
        let t = pythagorean_tree(3).unwrap();
        assert_eq!(row(&t, 1), vec![[12, 5, 13], [6, 8, 10]]);
        assert_eq!(
            row(&t, 2),
            vec![[20, 21, 29], [30, 16, 34], [24, 7, 25], [8, 15, 17]]
        );
        assert_eq!(
            row(&t, 3),
            vec![
                [28, 45, 53],
                [70, 24, 74],
                [80, 39, 89],
                [48, 55, 73],
                [42, 40, 58],
                [56, 33, 65],
                [40, 9, 41],
                [10, 24, 26]
            ]
        );
        assert_eq!(t.len(), 3 + 2 + 4 + 8);
    }

    #[test]
    fn node_invariants() {
        let t = pythagorean_tree(8).unwrap();
        for n in t.iter() {
            let x = n.matrix;
            assert_eq!(x.x11 * x.x22, x.x12 * x.x12);
            assert_eq!(n.triple.c, x.trace());
            let mut a = IntMat2::IDENTITY;
            for g in &n.word {
                a = g.matrix() * a;
            }
            assert_eq!(sl2_act(&a, &SymMat2::new(0, 0, 1).unwrap()).unwrap(), x);
            if let NodeFraction::Ratio(f) = n.fraction {
                let e = euclid_triple(f.num(), f.den()).unwrap();
                assert_eq!(e.displayed(), n.triple.displayed());
            }
        }
    }

    #[test]
    fn coverage_to_hypotenuse_100() {
        let t = pythagorean_tree(12).unwrap();
        let seen: std::collections::HashSet<[i128; 3]> =
            t.iter().map(|n| n.triple.displayed()).collect();
        let mut count = 0;
        for c in 1..=100i128 {
            for a in 1..c {
                for b in 1..c {
                    let tr = ClassicalTriple::new(a, b, c);
                    if tr.is_standard() {
                        count += 1;
                        assert!(seen.contains(&[a, b, c]), "missing {tr}");
                    }
                }
            }
        }
        assert!(count > 20);
    }

    #[test]
    fn record_json() {
        let t = pythagorean_tree(1).unwrap();
        let n = &t.row(1).unwrap()[0];
        let s = serde_json::to_string(&n.record()).unwrap();
        assert_eq!(s, r#"{"word":"RRL","triple":[12,5,13],"fraction":"3/2"}"#);
        let root = serde_json::to_string(&t.root().unwrap().record()).unwrap();
        assert_eq!(root, r#"{"word":"","triple":[0,1,1],"fraction":null}"#);
    }
}

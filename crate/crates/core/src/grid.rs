//! The `k x l` grid of column labels `[kl]`, its rows `R_i` and columns
//! `C_j`, and the hypergraphs built from them.
//!
//! Cell `(i, j)` carries the label `(j-1)*k + i`, so grid column `j` is the
//! contiguous block `{(j-1)k+1, ..., jk}`. All labels are 1-based.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Grid {
    pub k: usize,
    pub l: usize,
}

impl Grid {
    pub fn new(k: usize, l: usize) -> Result<Self> {
        if k == 0 || l == 0 {
            return Err(Error::InvalidSize(format!("grid must be at least 1x1, got {k}x{l}")));
        }
        Ok(Grid { k, l })
    }

    pub fn size(&self) -> usize {
        self.k * self.l
    }

    /// Label of cell `(i, j)`, `i` in `[k]`, `j` in `[l]`.
    pub fn cell(&self, i: usize, j: usize) -> usize {
        debug_assert!((1..=self.k).contains(&i) && (1..=self.l).contains(&j));
        (j - 1) * self.k + i
    }

    /// Grid position `(i, j)` of a label.
    pub fn position(&self, y: usize) -> (usize, usize) {
        ((y - 1) % self.k + 1, (y - 1) / self.k + 1)
    }

    pub fn grid_row_of(&self, y: usize) -> usize {
        self.position(y).0
    }

    pub fn grid_col_of(&self, y: usize) -> usize {
        self.position(y).1
    }

    /// `R_i`, ascending.
    pub fn row(&self, i: usize) -> Vec<usize> {
        (1..=self.l).map(|j| self.cell(i, j)).collect()
    }

    /// `C_j`, ascending.
    pub fn col(&self, j: usize) -> Vec<usize> {
        (1..=self.k).map(|i| self.cell(i, j)).collect()
    }

    pub fn matrix(&self) -> Vec<Vec<usize>> {
        (1..=self.k).map(|i| self.row(i)).collect()
    }
}

/// A set of nonempty hyperedges over the vertices `[n]`, each edge sorted,
/// the edge list sorted and duplicate free.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        let mut out = Vec::new();
        for mut e in edges {
            e.sort_unstable();
            e.dedup();
            if e.is_empty() {
                return Err(Error::InvalidSize("hyperedges must be nonempty".into()));
            }
            if e[0] == 0 || *e.last().unwrap() > n {
                return Err(Error::InvalidSize(format!(
                    "hyperedge {e:?} is not contained in [{n}]"
                )));
            }
            out.push(e);
        }
        out.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out.dedup();
        Ok(Hypergraph { n, edges: out })
    }

    pub fn empty(n: usize) -> Self {
        Hypergraph { n, edges: Vec::new() }
    }

    /// Parses compact edge lists such as `"1,4,56,57"` (single-digit labels
    /// concatenated) or `"1 4 5-6 5-7"` (labels joined by `-`). With more
    /// than nine vertices a token without `-` is a single label.
    pub fn parse_edges(n: usize, text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        for tok in text.split(|c: char| c == ',' || c.is_whitespace()) {
            if tok.is_empty() {
                continue;
            }
            let edge: Vec<usize> = if tok.contains('-') || n > 9 {
                tok.split('-')
                    .map(|s| s.parse::<usize>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| Error::Parse(format!("bad hyperedge {tok:?}")))?
            } else {
                tok.chars()
                    .map(|c| c.to_digit(10).map(|d| d as usize))
                    .collect::<Option<_>>()
                    .ok_or_else(|| Error::Parse(format!("bad hyperedge {tok:?}")))?
            };
            edges.push(edge);
        }
        Self::new(n, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, edge: &[usize]) -> bool {
        self.edges.iter().any(|e| e == edge)
    }

    pub fn union(&self, other: &Hypergraph) -> Result<Hypergraph> {
        if self.n != other.n {
            return Err(Error::Incompatible(format!(
                "hypergraphs on [{}] and [{}]",
                self.n, other.n
            )));
        }
        Self::new(self.n, self.edges.iter().chain(&other.edges).cloned())
    }
}

/// All `t`-subsets of `items` (ascending input gives lexicographic output).
pub fn subsets(items: &[usize], t: usize) -> Vec<Vec<usize>> {
    fn rec(items: &[usize], t: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        let need = t - cur.len();
        for i in start..=items.len() - need {
            cur.push(items[i]);
            rec(items, t, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if t <= items.len() {
        rec(items, t, 0, &mut Vec::with_capacity(t), &mut out);
    }
    out
}

/// `Δ^t`: all `t`-subsets of `[kl]`.
pub fn delta_t(grid: &Grid, t: usize) -> Result<Hypergraph> {
    if t == 0 || t > grid.size() {
        return Err(Error::InvalidSize(format!("t = {t} not in [1, {}]", grid.size())));
    }
    let all: Vec<usize> = (1..=grid.size()).collect();
    Hypergraph::new(grid.size(), subsets(&all, t))
}

/// `Λ^s`: the `s`-subsets of each grid column.
pub fn lambda_s(grid: &Grid, s: usize) -> Result<Hypergraph> {
    if s == 0 || s > grid.k {
        return Err(Error::InvalidSize(format!("s = {s} not in [1, {}]", grid.k)));
    }
    let edges = (1..=grid.l).flat_map(|j| subsets(&grid.col(j), s));
    Hypergraph::new(grid.size(), edges)
}

/// The `t`-subsets of each grid row.
pub fn row_edges(grid: &Grid, t: usize) -> Result<Hypergraph> {
    if t == 0 || t > grid.l {
        return Err(Error::InvalidSize(format!("t = {t} not in [1, {}]", grid.l)));
    }
    let edges = (1..=grid.k).flat_map(|i| subsets(&grid.row(i), t));
    Hypergraph::new(grid.size(), edges)
}

/// `Δ^{s,t} = Λ^s ∪ {t-subsets of each row R_i}`.
pub fn delta_st(grid: &Grid, s: usize, t: usize) -> Result<Hypergraph> {
    lambda_s(grid, s)?.union(&row_edges(grid, t)?)
}

/// The family `ℒ` of transversals: sets with one cell in every grid row,
/// spread over at least two grid columns. Sorted lexicographically.
pub fn script_l(grid: &Grid) -> Result<Vec<Vec<usize>>> {
    if grid.k < 2 || grid.l < 2 {
        return Err(Error::Regime(format!(
            "the transversal family needs k, l >= 2, got k = {}, l = {}",
            grid.k, grid.l
        )));
    }
    let mut out = Vec::new();
    let mut choice = vec![1usize; grid.k];
    loop {
        if choice.iter().any(|&j| j != choice[0]) {
            let mut s: Vec<usize> = choice
                .iter()
                .enumerate()
                .map(|(i, &j)| grid.cell(i + 1, j))
                .collect();
            s.sort_unstable();
            out.push(s);
        }
        // Odometer over column choices per grid row.
        let mut pos = grid.k;
        loop {
            if pos == 0 {
                out.sort();
                return Ok(out);
            }
            pos -= 1;
            if choice[pos] < grid.l {
                choice[pos] += 1;
                for c in choice.iter_mut().skip(pos + 1) {
                    *c = 1;
                }
                break;
            }
        }
    }
}

/// Formats a label set the way the examples write them, e.g. `{1,4}` as
/// `14` when every label is a single digit and `1-10` otherwise.
pub fn set_label(set: &[usize]) -> String {
    if set.iter().all(|&x| x < 10) {
        set.iter().map(|x| x.to_string()).collect()
    } else {
        set.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("-")
    }
}

/// All permutations of `1..=n`, each as a lookup table indexed from 1.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() + 1 == used.len() {
            let mut table = vec![0];
            table.extend_from_slice(cur);
            out.push(table);
            return;
        }
        for v in 1..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n + 1], &mut out);
    out
}

/// Groups label sets into orbits under permuting grid rows and permuting
/// grid columns. Each class is sorted and starts with its lexicographically
/// least member; classes are ordered by that representative.
pub fn symmetry_classes(grid: &Grid, sets: &[Vec<usize>]) -> Vec<Vec<Vec<usize>>> {
    let row_perms = permutations(grid.k);
    let col_perms = permutations(grid.l);
    let canonical = |set: &Vec<usize>| -> Vec<usize> {
        let mut best: Option<Vec<usize>> = None;
        for rp in &row_perms {
            for cp in &col_perms {
                let mut img: Vec<usize> = set
                    .iter()
                    .map(|&y| {
                        let (i, j) = grid.position(y);
                        grid.cell(rp[i], cp[j])
                    })
                    .collect();
                img.sort_unstable();
                if best.as_ref().is_none_or(|b| img < *b) {
                    best = Some(img);
                }
            }
        }
        best.unwrap_or_default()
    };
    let mut classes: std::collections::BTreeMap<Vec<usize>, Vec<Vec<usize>>> = Default::default();
    for set in sets {
        let mut sorted = set.clone();
        sorted.sort_unstable();
        classes.entry(canonical(&sorted)).or_default().push(sorted);
    }
    classes
        .into_values()
        .map(|mut members| {
            members.sort();
            members.dedup();
            members
        })
        .collect()
}

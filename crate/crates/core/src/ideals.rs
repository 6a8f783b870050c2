//! Minors of the `d x kl` matrix of indeterminates and the ideals built from
//! them: determinantal hyperedge ideals `J_{X,Δ}`, the components `I_S` and
//! `I_0`, and the conditional-independence ideal `J_C`.
//!
//! Sign convention: a minor `[A|B]` is the determinant of the submatrix with
//! rows `A` and columns `B` both taken in ascending order. With this
//! convention the leading term of every minor is its diagonal product with
//! coefficient `+1`.
//!
//! Canonical generator order: by minor size, then by column set, then by row
//! set (variables, i.e. 1-minors, come first).
//!
//! The variable part of `I_S` ranges over all `d` rows of the matrix. The
//! defining formula is sometimes printed with the row range `1..l`; the
//! examples and the dimension argument both use every row, so that is what
//! is built here.

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{self, Grid, Hypergraph};
use crate::groebner::{self, GroebnerBasis, Limits};
use crate::poly::{Field, FieldKind, Monomial, Polynomial, PolynomialJson, Ring, VariableId};

/// A minor `[A|B]`: row set `A ⊆ [d]` and column set `B ⊆ [kl]` of equal
/// size, both sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MinorSpec {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl MinorSpec {
    pub fn new(rows: impl Into<Vec<usize>>, cols: impl Into<Vec<usize>>) -> Result<Self> {
        let (mut rows, mut cols) = (rows.into(), cols.into());
        rows.sort_unstable();
        cols.sort_unstable();
        let distinct = |v: &[usize]| v.windows(2).all(|w| w[0] < w[1]);
        if !distinct(&rows) || !distinct(&cols) {
            return Err(Error::InvalidSize(format!(
                "minor [{rows:?}|{cols:?}] has repeated indices"
            )));
        }
        if rows.len() != cols.len() {
            return Err(Error::InvalidSize(format!(
                "minor needs |A| = |B|, got {} rows and {} columns",
                rows.len(),
                cols.len()
            )));
        }
        Ok(MinorSpec { rows, cols })
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn check(&self, ring: &Ring) -> Result<()> {
        for (&r, &c) in self.rows.iter().zip(&self.cols) {
            ring.check(VariableId::new(r, c))?;
        }
        if let (Some(&r), Some(&c)) = (self.rows.last(), self.cols.last()) {
            ring.check(VariableId::new(r, c))?;
        }
        Ok(())
    }

    /// The diagonal product `p_{a_1,b_1} ... p_{a_t,b_t}`.
    pub fn diagonal(&self, ring: &Ring) -> Monomial {
        Monomial::from_vars(
            self.rows
                .iter()
                .zip(&self.cols)
                .map(|(&r, &c)| ring.index_unchecked(VariableId::new(r, c))),
        )
    }

    fn key(&self) -> (usize, &[usize], &[usize]) {
        (self.rows.len(), &self.cols, &self.rows)
    }
}

impl PartialOrd for MinorSpec {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MinorSpec {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for MinorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.size() == 1 {
            return write!(f, "p_{{{},{}}}", self.rows[0], self.cols[0]);
        }
        write!(f, "[{}|{}]", grid::set_label(&self.rows), grid::set_label(&self.cols))
    }
}

/// Sorts into canonical order and removes duplicates.
pub fn canonicalize(minors: &mut Vec<MinorSpec>) {
    minors.sort();
    minors.dedup();
}

/// Calls `f(perm, sign)` for every permutation of `0..n`.
fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize], bool)) {
    fn rec(perm: &mut Vec<usize>, k: usize, odd: bool, f: &mut impl FnMut(&[usize], bool)) {
        if k == perm.len() {
            f(perm, odd);
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            rec(perm, k + 1, odd ^ (i != k), f);
            perm.swap(k, i);
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    rec(&mut perm, 0, false, &mut f);
}

/// The minor `[A|B]` as a polynomial, expanded over all permutations.
pub fn minor<F: Field>(ring: Ring, field: F, spec: &MinorSpec) -> Result<Polynomial<F>> {
    spec.check(&ring)?;
    let one = field.one();
    let minus_one = field.neg(&one);
    let mut terms = Vec::new();
    for_each_permutation(spec.size(), |perm, odd| {
        let m = Monomial::from_vars(perm.iter().enumerate().map(|(i, &j)| {
            ring.index_unchecked(VariableId::new(spec.rows[i], spec.cols[j]))
        }));
        terms.push((if odd { minus_one.clone() } else { one.clone() }, m));
    });
    Ok(Polynomial::from_terms(ring, field, terms))
}

/// Minors `[A|B]` for `B ∈ Δ`, `|B| ≤ d`, `A` ranging over `|B|`-subsets of
/// `[d]`. Hyperedges larger than `d` contribute nothing.
pub fn hyperedge_minors(d: usize, delta: &Hypergraph) -> Vec<MinorSpec> {
    let rows: Vec<usize> = (1..=d).collect();
    let mut out = Vec::new();
    for b in delta.edges() {
        if b.len() > d {
            continue;
        }
        for a in grid::subsets(&rows, b.len()) {
            out.push(MinorSpec { rows: a, cols: b.clone() });
        }
    }
    canonicalize(&mut out);
    out
}

/// Generators of `I_S`: the variables `p_{x,j}` for `x ∈ [d]`, `j ∈ S`, and
/// the `s`-minors on column sets inside a grid column. With `full = false`
/// minors whose columns meet `S` are left out (they lie in the ideal of the
/// variables), which leaves exactly the `s`-minors of each `P_{C_j \ S}`.
pub fn is_minors(grid: &Grid, d: usize, s: usize, set: &[usize], full: bool) -> Result<Vec<MinorSpec>> {
    if let Some(&bad) = set.iter().find(|&&y| y == 0 || y > grid.size()) {
        return Err(Error::InvalidSize(format!("label {bad} not in [{}]", grid.size())));
    }
    let mut out = Vec::new();
    for &j in set {
        for x in 1..=d {
            out.push(MinorSpec { rows: vec![x], cols: vec![j] });
        }
    }
    let lambda = grid::lambda_s(grid, s)?;
    let kept = lambda
        .edges()
        .iter()
        .filter(|b| full || b.iter().all(|y| !set.contains(y)))
        .cloned();
    let lambda = Hypergraph::new(grid.size(), kept)?;
    out.extend(hyperedge_minors(d, &lambda));
    canonicalize(&mut out);
    Ok(out)
}

/// The generating set `G(I_0)` for `s = 2`: all 2-minors inside a grid
/// column, and all `t`-minors whose columns meet every grid column at most
/// once. No regime check; see [`ideal_i0_minimal`].
pub fn i0_minors(grid: &Grid, d: usize, t: usize) -> Result<Vec<MinorSpec>> {
    let mut out = hyperedge_minors(d, &grid::lambda_s(grid, 2.min(grid.k))?);
    if grid.k < 2 {
        out.clear();
    }
    let rows: Vec<usize> = (1..=d).collect();
    if t <= d {
        let row_sets = grid::subsets(&rows, t);
        for cols in grid::subsets(&(1..=grid.l).collect::<Vec<_>>(), t) {
            // One cell from each chosen grid column.
            let mut choice = vec![1usize; t];
            loop {
                let b: Vec<usize> = cols.iter().zip(&choice).map(|(&j, &i)| grid.cell(i, j)).collect();
                for a in &row_sets {
                    out.push(MinorSpec::new(a.clone(), b.clone())?);
                }
                let mut pos = t;
                loop {
                    if pos == 0 {
                        break;
                    }
                    pos -= 1;
                    if choice[pos] < grid.k {
                        choice[pos] += 1;
                        for c in choice.iter_mut().skip(pos + 1) {
                            *c = 1;
                        }
                        break;
                    }
                    if pos == 0 {
                        pos = usize::MAX;
                        break;
                    }
                }
                if pos == usize::MAX || t == 0 {
                    break;
                }
            }
        }
    }
    canonicalize(&mut out);
    Ok(out)
}

/// Generators of the conditional-independence ideal, built directly from its
/// two statements: the `s`-minors of every column block `P_{C_j}` and the
/// `t`-minors of every row block `P_{R_i}`.
pub fn ci_minors(d: usize, grid: &Grid, s: usize, t: usize) -> Vec<MinorSpec> {
    let rows: Vec<usize> = (1..=d).collect();
    let mut out = Vec::new();
    let blocks = (1..=grid.l)
        .map(|j| (grid.col(j), s))
        .chain((1..=grid.k).map(|i| (grid.row(i), t)));
    for (block, size) in blocks {
        if size == 0 || size > d {
            continue;
        }
        for b in grid::subsets(&block, size) {
            for a in grid::subsets(&rows, size) {
                out.push(MinorSpec { rows: a, cols: b.clone() });
            }
        }
    }
    canonicalize(&mut out);
    out
}

/// Instance parameters `(d, k, l, s, t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Instance {
    pub d: usize,
    pub k: usize,
    pub l: usize,
    pub s: usize,
    pub t: usize,
}

impl Instance {
    pub fn new(d: usize, k: usize, l: usize, s: usize, t: usize) -> Result<Self> {
        if [d, k, l, s, t].contains(&0) {
            return Err(Error::InvalidSize("all instance sizes must be positive".into()));
        }
        Ok(Instance { d, k, l, s, t })
    }

    /// The main-regime instance for grid `k x l` and `d` rows.
    pub fn main(k: usize, l: usize, d: usize) -> Result<Self> {
        Self::new(d, k, l, 2, l)
    }

    pub fn grid(&self) -> Grid {
        Grid { k: self.k, l: self.l }
    }

    pub fn ring(&self) -> Ring {
        Ring::new(self.d, self.k * self.l)
    }

    /// `2 ≤ k ≤ l ≤ d`, `s = 2`, `t = l`.
    pub fn in_main_regime(&self) -> bool {
        2 <= self.k && self.k <= self.l && self.l <= self.d && self.s == 2 && self.t == self.l
    }

    pub fn require_main_regime(&self) -> Result<()> {
        if self.in_main_regime() {
            Ok(())
        } else {
            Err(Error::Regime(format!(
                "need 2 <= k <= l <= d, s = 2, t = l; got (d,k,l,s,t) = ({},{},{},{},{})",
                self.d, self.k, self.l, self.s, self.t
            )))
        }
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(d,k,l,s,t)=({},{},{},{},{})", self.d, self.k, self.l, self.s, self.t)
    }
}

/// An ideal of `K[P]` given by generators, with an optional grid (for the
/// block structure of the columns) and a lazily installed reduced Gröbner
/// basis.
#[derive(Debug, Clone)]
pub struct Ideal<F: Field> {
    ring: Ring,
    grid: Option<Grid>,
    field: F,
    generators: Vec<Polynomial<F>>,
    minors: Option<Vec<MinorSpec>>,
    label: Option<String>,
    basis: OnceLock<Arc<GroebnerBasis<F>>>,
}

impl<F: Field> Ideal<F> {
    /// Builds an ideal from generators; zero generators are dropped.
    pub fn new(ring: Ring, field: F, generators: Vec<Polynomial<F>>) -> Result<Self> {
        for g in &generators {
            if g.ring() != ring || g.field() != field {
                return Err(Error::Incompatible("generator from a different ring".into()));
            }
        }
        Ok(Ideal {
            ring,
            grid: None,
            field,
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
            minors: None,
            label: None,
            basis: OnceLock::new(),
        })
    }

    pub fn from_minors(ring: Ring, field: F, minors: Vec<MinorSpec>) -> Result<Self> {
        let generators = minors
            .iter()
            .map(|m| minor(ring, field, m))
            .collect::<Result<Vec<_>>>()?;
        let mut ideal = Self::new(ring, field, generators)?;
        ideal.minors = Some(minors);
        Ok(ideal)
    }

    pub fn with_grid(mut self, grid: Grid) -> Self {
        self.grid = Some(grid);
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn grid(&self) -> Option<Grid> {
        self.grid
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }

    /// The minors the generators were built from, when known.
    pub fn minors(&self) -> Option<&[MinorSpec]> {
        self.minors.as_deref()
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// The cached reduced Gröbner basis, computing it on first use.
    /// Concurrent callers may both compute; the first installed value wins
    /// and both values are the same canonical basis.
    pub fn groebner_basis(&self, limits: &Limits) -> Result<Arc<GroebnerBasis<F>>> {
        if let Some(gb) = self.basis.get() {
            return Ok(gb.clone());
        }
        let gb = Arc::new(groebner::buchberger(&self.generators, self.ring, self.field, limits)?);
        let _ = self.basis.set(gb);
        Ok(self.basis.get().expect("installed").clone())
    }

    /// Installs an externally obtained basis (for instance from a cache
    /// file). Returns `false` if a basis was already present.
    pub fn install_basis(&self, gb: Arc<GroebnerBasis<F>>) -> Result<bool> {
        if gb.ring() != self.ring || gb.field() != self.field {
            return Err(Error::Incompatible("basis from a different ring".into()));
        }
        Ok(self.basis.set(gb).is_ok())
    }

    pub fn cached_basis(&self) -> Option<Arc<GroebnerBasis<F>>> {
        self.basis.get().cloned()
    }

    pub fn to_json(&self) -> Result<IdealJson> {
        let (k, l) = match self.grid {
            Some(g) => (g.k, g.l),
            None => (self.ring.cols, 1),
        };
        Ok(IdealJson {
            schema: Some(crate::SCHEMA.to_string()),
            d: self.ring.rows,
            k,
            l,
            field: self.field.kind(),
            label: self.label.clone(),
            generators: self
                .generators
                .iter()
                .map(|g| g.to_json())
                .collect::<Result<_>>()?,
        })
    }

    pub fn from_json(field: F, json: &IdealJson) -> Result<Self> {
        if json.field != field.kind() {
            return Err(Error::Incompatible(format!(
                "file is over {}, requested {}",
                json.field,
                field.kind()
            )));
        }
        let grid = Grid::new(json.k, json.l)?;
        let ring = Ring::new(json.d, grid.size());
        let generators = json
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| Polynomial::from_json(ring, field, g, &format!("generators[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        let mut ideal = Self::new(ring, field, generators)?.with_grid(grid);
        ideal.label = json.label.clone();
        Ok(ideal)
    }
}

/// File form of an ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub d: usize,
    pub k: usize,
    pub l: usize,
    pub field: FieldKind,
    #[serde(default)]
    pub label: Option<String>,
    pub generators: Vec<PolynomialJson>,
}

/// `J_{X,Δ}` over the `d x n` matrix, `n` the vertex count of `Δ`.
pub fn hyperedge_ideal<F: Field>(d: usize, delta: &Hypergraph, field: F) -> Result<Ideal<F>> {
    let ring = Ring::new(d, delta.n());
    Ideal::from_minors(ring, field, hyperedge_minors(d, delta))
}

/// `I_S` in canonical form (or with every `Λ^s` minor when `full`).
pub fn ideal_is<F: Field>(
    grid: &Grid,
    d: usize,
    s: usize,
    set: &[usize],
    field: F,
    full: bool,
) -> Result<Ideal<F>> {
    let ring = Ring::new(d, grid.size());
    let label = format!("I_{{{}}}", grid::set_label(&sorted(set)));
    Ok(Ideal::from_minors(ring, field, is_minors(grid, d, s, set, full)?)?
        .with_grid(*grid)
        .with_label(label))
}

/// `I_0` by its minimal generating set, in the regime
/// `2 ≤ k ≤ l ≤ d`, `s = 2`, `t = l`.
pub fn ideal_i0_minimal<F: Field>(grid: &Grid, d: usize, s: usize, t: usize, field: F) -> Result<Ideal<F>> {
    Instance::new(d, grid.k, grid.l, s, t)?.require_main_regime()?;
    i0_ideal(grid, d, t, field)
}

/// `I_0` from the same generator shape without the regime check.
pub fn i0_ideal<F: Field>(grid: &Grid, d: usize, t: usize, field: F) -> Result<Ideal<F>> {
    let ring = Ring::new(d, grid.size());
    Ok(Ideal::from_minors(ring, field, i0_minors(grid, d, t)?)?
        .with_grid(*grid)
        .with_label("I_0"))
}

/// The conditional-independence ideal `J_C`.
pub fn ci_ideal<F: Field>(inst: &Instance, field: F) -> Result<Ideal<F>> {
    let grid = inst.grid();
    Ok(Ideal::from_minors(inst.ring(), field, ci_minors(inst.d, &grid, inst.s, inst.t))?
        .with_grid(grid)
        .with_label("J"))
}

fn sorted(set: &[usize]) -> Vec<usize> {
    let mut v = set.to_vec();
    v.sort_unstable();
    v
}

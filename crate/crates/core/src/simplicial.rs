//! Stanley–Reisner complexes of squarefree initial ideals and their
//! dimension.
//!
//! Vertices are the matrix variables, identified by their ring index, so a
//! complex has at most 128 vertices. The Krull dimension of `R/I` equals
//! the size of a largest face of the complex of `in(I)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::groebner::GroebnerBasis;
use crate::poly::{Field, Ring, VariableId};

/// Default cap on the number of vertices for the exact search.
pub const DEFAULT_VERTEX_BOUND: usize = 128;

/// Largest vertex group handled by the exact in-group table.
const GROUP_TABLE_BITS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SRComplex {
    ring: Ring,
    nonfaces: Vec<u128>,
}

fn bit(v: usize) -> u128 {
    1u128 << v
}

fn bits(mask: u128) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(v)
    })
}

/// The complex whose minimal non-faces are the supports of the leading
/// monomials of `gb`.
pub fn sr_complex<F: Field>(gb: &GroebnerBasis<F>) -> Result<SRComplex> {
    let ring = gb.ring();
    let mut sets = Vec::with_capacity(gb.len());
    for (i, g) in gb.elements().iter().enumerate() {
        let m = g.leading_monomial().expect("nonzero");
        if !m.is_squarefree() {
            return Err(Error::NotSquarefree(format!(
                "leading monomial {} of element {i}",
                ring.format_monomial(m)
            )));
        }
        sets.push(m.support().map(|v| v as usize).collect::<Vec<_>>());
    }
    SRComplex::from_nonfaces(ring, sets)
}

impl SRComplex {
    /// Builds a complex from arbitrary non-face sets; only the
    /// inclusion-minimal ones are kept.
    pub fn from_nonfaces(ring: Ring, sets: Vec<Vec<usize>>) -> Result<Self> {
        if ring.nvars() > 128 {
            return Err(Error::InvalidSize(format!(
                "{} variables, at most 128 supported",
                ring.nvars()
            )));
        }
        let mut masks = Vec::with_capacity(sets.len());
        for s in sets {
            let mut m = 0u128;
            for v in s {
                if v >= ring.nvars() {
                    return Err(Error::InvalidSize(format!("vertex {v} out of range")));
                }
                m |= bit(v);
            }
            masks.push(m);
        }
        masks.sort_by_key(|m| (m.count_ones(), *m));
        masks.dedup();
        let mut nonfaces: Vec<u128> = Vec::new();
        for m in masks {
            if !nonfaces.iter().any(|&n| n & m == n) {
                nonfaces.push(m);
            }
        }
        Ok(SRComplex { ring, nonfaces })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn nvertices(&self) -> usize {
        self.ring.nvars()
    }

    pub fn nonfaces(&self) -> &[u128] {
        &self.nonfaces
    }

    /// Minimal non-faces as sorted lists of matrix variables.
    pub fn nonface_variables(&self) -> Vec<Vec<VariableId>> {
        self.nonfaces
            .iter()
            .map(|&m| bits(m).map(|v| self.ring.variable(v as u16).expect("in range")).collect())
            .collect()
    }

    pub fn is_face(&self, face: u128) -> bool {
        self.nonfaces.iter().all(|&n| n & face != n)
    }

    pub fn face_mask(&self, face: &[VariableId]) -> Result<u128> {
        face.iter().try_fold(0u128, |acc, &v| Ok(acc | bit(self.ring.index(v)? as usize)))
    }

    /// Size of a largest face.
    ///
    /// Branch and bound over the vertices in column-major order. Vertices
    /// are grouped (by grid column block when a grid is given, otherwise
    /// by matrix column); the bound adds, per group, the largest face of
    /// the group's still available vertices that avoids the non-faces of
    /// size at most two inside the group. `seed` is a known face used as
    /// the starting incumbent.
    pub fn dimension(&self, grid: Option<&Grid>, seed: Option<u128>, vertex_bound: usize) -> Result<usize> {
        let n = self.nvertices();
        if n > vertex_bound {
            return Err(Error::ResourceLimit(format!(
                "{n} vertices exceed the exhaustive-search bound {vertex_bound}"
            )));
        }
        if let Some(s) = seed {
            if !self.is_face(s) {
                return Err(Error::Hypothesis("seed is not a face".into()));
            }
        }
        let search = Search::new(self, grid);
        Ok(search.run(seed.map_or(0, |s| s.count_ones() as usize)))
    }
}

struct Group {
    vertices: Vec<usize>,
    /// Largest independent set for every subset of the group, by local mask.
    table: Vec<u8>,
}

struct Search {
    order: Vec<usize>,
    groups: Vec<Group>,
    /// For each vertex, its partners in non-faces of size two.
    conflicts: Vec<u128>,
    /// For each vertex, the non-faces containing it.
    by_vertex: Vec<Vec<u128>>,
    loops: u128,
}

impl Search {
    fn new(complex: &SRComplex, grid: Option<&Grid>) -> Self {
        let ring = complex.ring;
        let n = ring.nvars();
        let aux = ring.aux;
        let cols = ring.cols;
        let idx = |x: usize, y: usize| aux + (x - 1) * cols + (y - 1);

        let mut col_groups: Vec<Vec<usize>> = match grid {
            Some(g) if g.size() == cols => (1..=g.l).map(|j| g.col(j)).collect(),
            _ => (1..=cols).map(|y| vec![y]).collect(),
        };
        let mut groups_vertices: Vec<Vec<usize>> = Vec::new();
        if aux > 0 {
            groups_vertices.push((0..aux).collect());
        }
        for cs in col_groups.drain(..) {
            let vs: Vec<usize> = cs
                .iter()
                .flat_map(|&y| (1..=ring.rows).map(move |x| (x, y)))
                .map(|(x, y)| idx(x, y))
                .collect();
            if vs.len() > GROUP_TABLE_BITS {
                groups_vertices.extend(cs.iter().map(|&y| (1..=ring.rows).map(|x| idx(x, y)).collect()));
            } else {
                groups_vertices.push(vs);
            }
        }
        let order: Vec<usize> = groups_vertices.iter().flatten().copied().collect();
        debug_assert_eq!(order.len(), n);

        let mut conflicts = vec![0u128; n];
        let mut loops = 0u128;
        let mut by_vertex = vec![Vec::new(); n];
        for &nf in &complex.nonfaces {
            let vs: Vec<usize> = bits(nf).collect();
            match vs.len() {
                1 => loops |= nf,
                2 => {
                    conflicts[vs[0]] |= bit(vs[1]);
                    conflicts[vs[1]] |= bit(vs[0]);
                }
                _ => {}
            }
            for v in vs {
                by_vertex[v].push(nf);
            }
        }

        let groups = groups_vertices
            .into_iter()
            .map(|vertices| {
                let table = group_table(&vertices, &conflicts, loops);
                Group { vertices, table }
            })
            .collect();
        Search {
            order,
            groups,
            conflicts,
            by_vertex,
            loops,
        }
    }

    fn run(&self, incumbent: usize) -> usize {
        let mut best = incumbent;
        let available: u128 = self.order.iter().fold(0, |m, &v| m | bit(v)) & !self.loops;
        self.dfs(0, 0, available, 0, &mut best);
        best
    }

    fn bound(&self, chosen: u128, available: u128) -> usize {
        let mut total = chosen.count_ones() as usize;
        for g in &self.groups {
            let mut local = 0usize;
            for (i, &v) in g.vertices.iter().enumerate() {
                if available & bit(v) != 0 {
                    local |= 1 << i;
                }
            }
            total += g.table[local] as usize;
        }
        total
    }

    /// `available`: undecided vertices that can still be added without
    /// completing a non-face.
    fn dfs(&self, pos: usize, chosen: u128, available: u128, size: usize, best: &mut usize) {
        if size > *best {
            *best = size;
        }
        if available == 0 || self.bound(chosen, available) <= *best {
            return;
        }
        let mut pos = pos;
        while available & bit(self.order[pos]) == 0 {
            pos += 1;
        }
        let v = self.order[pos];
        let rest = available & !bit(v);

        // Include v: drop its conflicts and every vertex that would now
        // complete a non-face.
        let with = chosen | bit(v);
        let mut avail = rest & !self.conflicts[v];
        for &nf in &self.by_vertex[v] {
            let missing = nf & !with;
            if missing.count_ones() == 1 {
                avail &= !missing;
            }
        }
        self.dfs(pos + 1, with, avail, size + 1, best);
        self.dfs(pos + 1, chosen, rest, size, best);
    }
}

/// Largest independent set of every subset of `vertices`, using only the
/// pairwise conflicts and singleton non-faces.
fn group_table(vertices: &[usize], conflicts: &[u128], loops: u128) -> Vec<u8> {
    let k = vertices.len();
    let local_conf: Vec<usize> = vertices
        .iter()
        .map(|&v| {
            vertices
                .iter()
                .enumerate()
                .filter(|&(_, &w)| conflicts[v] & bit(w) != 0)
                .fold(0usize, |m, (i, _)| m | (1 << i))
        })
        .collect();
    let dead: usize = vertices
        .iter()
        .enumerate()
        .filter(|&(_, &v)| loops & bit(v) != 0)
        .fold(0, |m, (i, _)| m | (1 << i));
    let mut table = vec![0u8; 1 << k];
    for mask in 1usize..(1 << k) {
        let m = mask & !dead;
        if m != mask {
            table[mask] = table[m];
            continue;
        }
        let i = mask.trailing_zeros() as usize;
        let without = mask & !(1 << i);
        let take = 1 + table[without & !local_conf[i]];
        table[mask] = take.max(table[without]);
    }
    table
}

/// The face `{(d, t) : t ∉ S} ∪ {(r, c_i) : r < d}` with `c_i` the largest
/// cell of grid column `i` outside `S`, of size `l(k+d-1) - k`.
pub fn witness_face_is(grid: &Grid, d: usize, set: &[usize]) -> Result<Vec<VariableId>> {
    check_regime(grid, d)?;
    let (k, l) = (grid.k, grid.l);
    let mut per_row = vec![0usize; k + 1];
    for &y in set {
        if y == 0 || y > grid.size() {
            return Err(Error::InvalidSize(format!("label {y} not in [{}]", grid.size())));
        }
        per_row[grid.grid_row_of(y)] += 1;
    }
    if set.len() != k || per_row[1..].iter().any(|&c| c != 1) {
        return Err(Error::Regime("S must pick one cell from each grid row".into()));
    }
    let mut face: Vec<VariableId> = (1..=grid.size())
        .filter(|y| !set.contains(y))
        .map(|y| VariableId::new(d, y))
        .collect();
    for i in 1..=l {
        let c = grid
            .col(i)
            .into_iter()
            .filter(|y| !set.contains(y))
            .max()
            .ok_or_else(|| Error::Regime(format!("grid column {i} lies inside S")))?;
        face.extend((1..d).map(|r| VariableId::new(r, c)));
    }
    face.sort();
    Ok(face)
}

/// The three-part face `{(1,t)} ∪ {(r,j) : r ≥ 2, j ∈ R_1 ∖ C_l} ∪
/// {(r, k(l-1)+1) : 2 ≤ r ≤ l-1}`, of size `l(k+d) - d - 1`.
pub fn witness_face_i0(grid: &Grid, d: usize) -> Result<Vec<VariableId>> {
    check_regime(grid, d)?;
    let (k, l) = (grid.k, grid.l);
    let mut face: Vec<VariableId> = (1..=grid.size()).map(|y| VariableId::new(1, y)).collect();
    let last_col = grid.col(l);
    for j in grid.row(1).into_iter().filter(|y| !last_col.contains(y)) {
        face.extend((2..=d).map(|r| VariableId::new(r, j)));
    }
    face.extend((2..l).map(|r| VariableId::new(r, k * (l - 1) + 1)));
    face.sort();
    Ok(face)
}

fn check_regime(grid: &Grid, d: usize) -> Result<()> {
    if 2 <= grid.k && grid.k <= grid.l && grid.l <= d {
        Ok(())
    } else {
        Err(Error::Regime(format!(
            "need 2 <= k <= l <= d, got k={} l={} d={d}",
            grid.k, grid.l
        )))
    }
}

pub fn formula_dim_is(grid: &Grid, d: usize) -> usize {
    grid.l * (grid.k + d - 1) - grid.k
}

pub fn formula_dim_i0(grid: &Grid, d: usize) -> usize {
    grid.l * (grid.k + d) - d - 1
}

/// Dimension of `R/I` with both readings of the codimension column.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionReport {
    pub label: String,
    pub variables: usize,
    pub dimension: usize,
    pub codimension: usize,
    pub formula: Option<usize>,
    pub witness: Vec<String>,
    pub witness_is_face: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid;
    use crate::groebner::Limits;
    use crate::ideals;
    use crate::poly::{Polynomial, Rationals};

    /// Exhaustive oracle: largest subset avoiding all non-faces.
    fn brute_max(c: &SRComplex) -> usize {
        let n = c.nvertices();
        assert!(n <= 20);
        (0u128..(1 << n)).filter(|&m| c.is_face(m)).map(|m| m.count_ones() as usize).max().unwrap()
    }

    fn idx(ring: Ring, r: usize, c: usize) -> usize {
        ring.index(VariableId::new(r, c)).unwrap() as usize
    }

    #[test]
    fn trivial_complexes() {
        let ring = Ring::new(1, 2);
        let x = Polynomial::var(ring, Rationals, VariableId::new(1, 1)).unwrap();
        let gb = crate::groebner::buchberger(&[x], ring, Rationals, &Limits::default()).unwrap();
        let c = sr_complex(&gb).unwrap();
        assert_eq!(c.nonfaces(), &[1u128]);
        assert_eq!(c.dimension(None, None, 128).unwrap(), 1);
        let zero = crate::groebner::buchberger::<Rationals>(&[], ring, Rationals, &Limits::default()).unwrap();
        let full = sr_complex(&zero).unwrap();
        assert!(full.nonfaces().is_empty());
        assert_eq!(full.dimension(None, None, 128).unwrap(), 2);
        assert!(matches!(full.dimension(None, None, 1), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn minimal_nonfaces_are_kept() {
        let ring = Ring::new(1, 4);
        let c = SRComplex::from_nonfaces(ring, vec![vec![0, 1, 2], vec![0, 1], vec![2, 3], vec![0, 1]]).unwrap();
        assert_eq!(c.nonfaces(), &[0b0011, 0b1100]);
    }

    #[test]
    fn i14_complex_contents() {
        let g = Grid::new(2, 3).unwrap();
        let is = ideals::ideal_is(&g, 3, 2, &[1, 4], Rationals, false).unwrap();
        let c = sr_complex(&is.groebner_basis(&Limits::default()).unwrap()).unwrap();
        let ring = is.ring();
        for x in 1..=3 {
            for y in [1, 4] {
                assert!(c.nonfaces().contains(&bit(idx(ring, x, y))));
            }
        }
        // Diagonal of [12|56].
        assert!(c.nonfaces().contains(&(bit(idx(ring, 1, 5)) | bit(idx(ring, 2, 6)))));
    }

    #[test]
    fn branch_and_bound_matches_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        let ring = Ring::new(3, 5);
        for _ in 0..60 {
            let sets: Vec<Vec<usize>> = (0..rng.gen_range(0..12))
                .map(|_| {
                    let size = rng.gen_range(1..4);
                    (0..size).map(|_| rng.gen_range(0..15)).collect()
                })
                .collect();
            let c = SRComplex::from_nonfaces(ring, sets).unwrap();
            let grid = Grid::new(5, 1).unwrap();
            assert_eq!(c.dimension(None, None, 128).unwrap(), brute_max(&c));
            assert_eq!(c.dimension(Some(&grid), None, 128).unwrap(), brute_max(&c));
        }
    }

    #[test]
    fn dimensions_small() {
        let g = Grid::new(2, 3).unwrap();
        let lim = Limits::default();
        for s in grid::script_l(&g).unwrap() {
            let is = ideals::ideal_is(&g, 3, 2, &s, Rationals, false).unwrap();
            let c = sr_complex(&is.groebner_basis(&lim).unwrap()).unwrap();
            let w = witness_face_is(&g, 3, &s).unwrap();
            let wm = c.face_mask(&w).unwrap();
            assert!(c.is_face(wm));
            assert_eq!(w.len(), 10);
            assert_eq!(c.dimension(Some(&g), Some(wm), 128).unwrap(), 10);
        }
        let i0 = ideals::i0_ideal(&g, 3, 3, Rationals).unwrap();
        let c = sr_complex(&i0.groebner_basis(&lim).unwrap()).unwrap();
        let w = witness_face_i0(&g, 3).unwrap();
        assert_eq!(w.len(), formula_dim_i0(&g, 3));
        assert!(c.is_face(c.face_mask(&w).unwrap()));
        assert_eq!(c.dimension(Some(&g), None, 128).unwrap(), formula_dim_i0(&g, 3));
    }

    #[test]
    fn witness_shapes() {
        let g = Grid::new(2, 2).unwrap();
        let w = witness_face_i0(&g, 2).unwrap();
        assert_eq!(w.len(), 5);
        let g = Grid::new(3, 3).unwrap();
        let w = witness_face_i0(&g, 3).unwrap();
        assert_eq!(w.len(), 14);
        // f3 = {(2, 7)}.
        assert!(w.contains(&VariableId::new(2, 7)));
        assert_eq!(witness_face_is(&g, 3, &[1, 5, 9]).unwrap().len(), 12);
        assert!(witness_face_is(&g, 3, &[1, 2]).is_err());
        assert!(witness_face_i0(&Grid::new(3, 2).unwrap(), 3).is_err());
    }
}

//! Exhaustive vanishing-set census over a prime field.
//!
//! Points of `GF(q)^{d x kl}` are numbered in row-major odometer order: the
//! entry `p_{1,1}` is the most significant digit and `p_{d,kl}` the least.
//! Work is split into chunks that fix the leading digits, so counts and
//! witness lists do not depend on the number of worker threads.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{self, Hypergraph};
use crate::ideals::{self, Ideal, Instance};
use crate::poly::{Field, PrimeField, Ring};

/// Default cap on `points x generators`.
pub const DEFAULT_POINT_BOUND: u128 = 1 << 30;

/// Witnesses kept per discrepancy class.
pub const MAX_WITNESSES: usize = 10;

/// `true` iff every generator vanishes at `point` (values by variable
/// index).
pub fn evaluate<F: Field>(ideal: &Ideal<F>, point: &[F::Elem]) -> Result<bool> {
    for g in ideal.generators() {
        if !ideal.field().is_zero(&g.evaluate(point)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Generators compiled to flat residue arithmetic, fewest terms first.
#[derive(Debug, Clone)]
struct Compiled {
    q: u64,
    /// Per generator: terms as (coefficient, variable list with repeats).
    gens: Vec<Vec<(u64, Vec<u16>)>>,
}

impl Compiled {
    fn new(ideal: &Ideal<PrimeField>) -> Self {
        let q = ideal.field().modulus() as u64;
        let mut gens: Vec<Vec<(u64, Vec<u16>)>> = ideal
            .generators()
            .iter()
            .map(|g| {
                g.terms()
                    .iter()
                    .map(|(c, m)| {
                        let vars = m
                            .factors()
                            .iter()
                            .flat_map(|&(v, e)| std::iter::repeat(v).take(e as usize))
                            .collect();
                        (*c as u64, vars)
                    })
                    .collect()
            })
            .collect();
        gens.sort_by_key(|g| g.len());
        Compiled { q, gens }
    }

    fn vanishes(&self, point: &[u64]) -> bool {
        let q = self.q;
        self.gens.iter().all(|g| {
            let mut acc = 0u64;
            for (c, vars) in g {
                let mut t = *c;
                for &v in vars {
                    t = t * point[v as usize] % q;
                    if t == 0 {
                        break;
                    }
                }
                acc += t;
            }
            acc % q == 0
        })
    }
}

/// Result of a census.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointCensus {
    pub q: u32,
    pub instance: Instance,
    pub points: u64,
    pub v_j: u64,
    pub v_i0: u64,
    /// `(label of S, |V(I_S)|)` for every `S`, in the order of the
    /// transversal list.
    pub v_is: Vec<(String, u64)>,
    /// Points of `V(J)` outside every component.
    pub missing: u64,
    /// Points of some component outside `V(J)`.
    pub extra: u64,
    pub missing_witnesses: Vec<Vec<Vec<u32>>>,
    pub extra_witnesses: Vec<Vec<Vec<u32>>>,
}

impl PointCensus {
    pub fn holds(&self) -> bool {
        self.missing == 0 && self.extra == 0
    }
}

#[derive(Default, Clone)]
struct Tally {
    v_j: u64,
    v_i0: u64,
    v_is: Vec<u64>,
    missing: u64,
    extra: u64,
    missing_w: Vec<u64>,
    extra_w: Vec<u64>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.v_j += other.v_j;
        self.v_i0 += other.v_i0;
        if self.v_is.is_empty() {
            self.v_is = other.v_is;
        } else {
            for (a, b) in self.v_is.iter_mut().zip(other.v_is) {
                *a += b;
            }
        }
        self.missing += other.missing;
        self.extra += other.extra;
        self.missing_w.extend(other.missing_w);
        self.extra_w.extend(other.extra_w);
        self.missing_w.sort_unstable();
        self.missing_w.truncate(MAX_WITNESSES);
        self.extra_w.sort_unstable();
        self.extra_w.truncate(MAX_WITNESSES);
        self
    }
}

/// Checks `V(J) = V(I_0) ∪ ⋃_S V(I_S)` by evaluating every generator at
/// every point of `GF(q)^{d x kl}`. `bound` caps `points x generators`;
/// `force` lifts the cap.
pub fn census(inst: &Instance, q: u32, bound: u128, force: bool) -> Result<PointCensus> {
    inst.require_main_regime()?;
    let field = PrimeField::new(q).map_err(|_| Error::NotPrime(q))?;
    let g = inst.grid();
    let j = ideals::ci_ideal(inst, field)?;
    let i0 = ideals::i0_ideal(&g, inst.d, inst.t, field)?;
    let transversals = grid::script_l(&g)?;
    let components: Vec<Ideal<PrimeField>> = transversals
        .iter()
        .map(|s| ideals::ideal_is(&g, inst.d, inst.s, s, field, false))
        .collect::<Result<_>>()?;

    let ring: Ring = inst.ring();
    let n = ring.nvars();
    let points = (q as u128).checked_pow(n as u32).filter(|&p| p <= u64::MAX as u128).ok_or_else(|| {
        Error::ResourceLimit(format!("{q}^{n} points do not fit the enumerator"))
    })?;
    let total_gens = j.generators().len()
        + i0.generators().len()
        + components.iter().map(|c| c.generators().len()).sum::<usize>();
    let work = points * total_gens as u128;
    if work > bound && !force {
        return Err(Error::ResourceLimit(format!(
            "{points} points x {total_gens} generators exceeds the bound {bound}; use force to run anyway"
        )));
    }
    let points = points as u64;

    let cj = Compiled::new(&j);
    let ci0 = Compiled::new(&i0);
    let cis: Vec<Compiled> = components.iter().map(Compiled::new).collect();

    // Fix the leading `h` digits per chunk.
    let q64 = q as u64;
    let mut h = 0usize;
    while h < n && q64.pow(h as u32) < 4096 {
        h += 1;
    }
    let chunks = q64.pow(h as u32);
    let low = n - h;
    let per_chunk = q64.pow(low as u32);

    let tally = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut t = Tally {
                v_is: vec![0; cis.len()],
                ..Tally::default()
            };
            let mut point = vec![0u64; n];
            decode(chunk * per_chunk, q64, &mut point);
            for offset in 0..per_chunk {
                let index = chunk * per_chunk + offset;
                if offset > 0 {
                    increment(&mut point, q64);
                }
                let in_j = cj.vanishes(&point);
                let in_0 = ci0.vanishes(&point);
                let mut in_union = in_0;
                for (c, count) in cis.iter().zip(t.v_is.iter_mut()) {
                    if c.vanishes(&point) {
                        *count += 1;
                        in_union = true;
                    }
                }
                t.v_j += in_j as u64;
                t.v_i0 += in_0 as u64;
                if in_j && !in_union {
                    t.missing += 1;
                    if t.missing_w.len() < MAX_WITNESSES {
                        t.missing_w.push(index);
                    }
                }
                if in_union && !in_j {
                    t.extra += 1;
                    if t.extra_w.len() < MAX_WITNESSES {
                        t.extra_w.push(index);
                    }
                }
            }
            t
        })
        .reduce(
            || Tally::default(),
            Tally::merge,
        );

    let as_matrix = |index: u64| {
        let mut p = vec![0u64; n];
        decode(index, q64, &mut p);
        p.chunks(ring.cols)
            .map(|row| row.iter().map(|&x| x as u32).collect())
            .collect()
    };
    Ok(PointCensus {
        q,
        instance: *inst,
        points,
        v_j: tally.v_j,
        v_i0: tally.v_i0,
        v_is: transversals
            .iter()
            .map(|s| grid::set_label(s))
            .zip(if tally.v_is.is_empty() { vec![0; cis.len()] } else { tally.v_is })
            .collect(),
        missing: tally.missing,
        extra: tally.extra,
        missing_witnesses: tally.missing_w.into_iter().map(as_matrix).collect(),
        extra_witnesses: tally.extra_w.into_iter().map(as_matrix).collect(),
    })
}

fn decode(mut index: u64, q: u64, point: &mut [u64]) {
    for x in point.iter_mut().rev() {
        *x = index % q;
        index /= q;
    }
}

fn increment(point: &mut [u64], q: u64) {
    for x in point.iter_mut().rev() {
        *x += 1;
        if *x < q {
            return;
        }
        *x = 0;
    }
}

/// `|V(I)|` over `GF(q)` for a single ideal, by the same enumeration.
pub fn count_points(ideal: &Ideal<PrimeField>, bound: u128) -> Result<u64> {
    let n = ideal.ring().nvars();
    let q = ideal.field().modulus() as u64;
    let points = (q as u128).pow(n as u32);
    if points * ideal.generators().len().max(1) as u128 > bound {
        return Err(Error::ResourceLimit(format!("{points} points exceed the bound")));
    }
    let c = Compiled::new(ideal);
    let points = points as u64;
    Ok((0..points)
        .into_par_iter()
        .map(|i| {
            let mut p = vec![0u64; n];
            decode(i, q, &mut p);
            c.vanishes(&p) as u64
        })
        .sum())
}

/// The hypergraph ideal over `GF(q)` for an edge list, for ad-hoc counts.
pub fn hyperedge_ideal_mod(d: usize, delta: &Hypergraph, q: u32) -> Result<Ideal<PrimeField>> {
    ideals::hyperedge_ideal(d, delta, PrimeField::new(q)?)
}

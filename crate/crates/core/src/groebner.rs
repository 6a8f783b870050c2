//! Division with remainder, S-polynomials, Buchberger's algorithm and the
//! checks built on top of it: Gröbner basis verification, ideal membership
//! and equality, intersection by elimination and the squarefree radical
//! certificate.
//!
//! S-polynomials are formed from monic copies of their inputs, so
//! `S(g1, g2) = (lcm/lt(g1)) g1/lc(g1) - (lcm/lt(g2)) g2/lc(g2)`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::ideals::Ideal;
use crate::poly::{Field, FieldKind, Monomial, Polynomial, PolynomialJson, Ring};

/// Resource limits for Buchberger runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Maximum number of critical pairs ever queued.
    pub max_pairs: usize,
    /// Maximum total degree of a pair's lcm.
    pub max_degree: u32,
    /// Maximum number of terms, summed over the basis, and of any single
    /// intermediate remainder.
    pub max_terms: usize,
    /// Also apply Buchberger's chain criterion.
    pub chain_criterion: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_pairs: 200_000,
            max_degree: 40,
            max_terms: 5_000_000,
            chain_criterion: false,
        }
    }
}

/// The term order a basis was computed for. `Lex` is the matrix order on
/// the ring's variables; with auxiliary variables present these come first
/// and so form an elimination order for them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TermOrder {
    Lex,
    Elimination,
}

impl TermOrder {
    pub fn for_ring(ring: &Ring) -> Self {
        if ring.aux == 0 {
            TermOrder::Lex
        } else {
            TermOrder::Elimination
        }
    }
}

impl fmt::Display for TermOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TermOrder::Lex => "lex",
            TermOrder::Elimination => "elim",
        })
    }
}

/// A reduced monic Gröbner basis, sorted by increasing leading monomial.
#[derive(Debug, Clone, PartialEq)]
pub struct GroebnerBasis<F: Field> {
    ring: Ring,
    field: F,
    order: TermOrder,
    elements: Vec<Polynomial<F>>,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn elements(&self) -> &[Polynomial<F>] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].leading_monomial().is_some_and(Monomial::is_one)
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .map(|g| g.leading_monomial().expect("nonzero").clone())
            .collect()
    }

    /// Normal form of `f`; zero iff `f` lies in the ideal.
    pub fn reduce(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        check_compatible(f, self.ring, self.field)?;
        Ok(reduce_plain(f, &Divisors::new(&self.elements)))
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool> {
        Ok(self.reduce(f)?.is_zero())
    }

    /// Rebuilds a basis from stored elements, re-establishing the canonical
    /// form. The elements are trusted to be a Gröbner basis; use
    /// [`is_groebner`] to check that.
    pub fn from_elements(ring: Ring, field: F, elements: Vec<Polynomial<F>>) -> Result<Self> {
        for g in &elements {
            check_compatible(g, ring, field)?;
        }
        let elements: Vec<_> = elements.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
        Ok(GroebnerBasis {
            ring,
            field,
            order: TermOrder::for_ring(&ring),
            elements: interreduce(elements),
        })
    }

    pub fn to_json(&self) -> Result<GroebnerBasisJson> {
        Ok(GroebnerBasisJson {
            schema: crate::SCHEMA.to_string(),
            order: self.order,
            field: self.field.kind(),
            rows: self.ring.rows,
            cols: self.ring.cols,
            elements: self.elements.iter().map(|g| g.to_json()).collect::<Result<_>>()?,
        })
    }

    pub fn from_json(field: F, json: &GroebnerBasisJson) -> Result<Self> {
        if json.field != field.kind() {
            return Err(Error::Incompatible(format!(
                "basis is over {}, requested {}",
                json.field,
                field.kind()
            )));
        }
        let ring = Ring::new(json.rows, json.cols);
        let elements = json
            .elements
            .iter()
            .enumerate()
            .map(|(i, g)| Polynomial::from_json(ring, field, g, &format!("elements[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        Self::from_elements(ring, field, elements)
    }
}

/// File form of a Gröbner basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroebnerBasisJson {
    pub schema: String,
    pub order: TermOrder,
    pub field: FieldKind,
    pub rows: usize,
    pub cols: usize,
    pub elements: Vec<PolynomialJson>,
}

fn check_compatible<F: Field>(f: &Polynomial<F>, ring: Ring, field: F) -> Result<()> {
    if f.ring() != ring || f.field() != field {
        return Err(Error::Incompatible(format!(
            "polynomial over {:?}/{} used with {:?}/{}",
            f.ring(),
            f.field().kind(),
            ring,
            field.kind()
        )));
    }
    Ok(())
}

/// One division step: subtract `coef * monomial * G[divisor]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductionStep<F: Field> {
    pub divisor: usize,
    pub coef: F::Elem,
    pub monomial: Monomial,
}

/// Record of a division: `input = sum coef * monomial * G[divisor] + remainder`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductionTrace<F: Field> {
    pub input: Polynomial<F>,
    pub steps: Vec<ReductionStep<F>>,
    pub remainder: Polynomial<F>,
}

impl<F: Field> ReductionTrace<F> {
    /// Recomputes `sum of steps + remainder` and compares with the input.
    pub fn replay(&self, basis: &[Polynomial<F>]) -> bool {
        let mut acc = self.remainder.clone();
        for s in &self.steps {
            let Some(g) = basis.get(s.divisor) else {
                return false;
            };
            let neg = acc.field().neg(&s.coef);
            acc = acc.sub_scaled(&neg, &s.monomial, g);
        }
        acc == self.input
    }
}

/// Leading monomials with their divisibility masks, for quick divisor
/// lookup.
struct Divisors<'a, F: Field> {
    polys: &'a [Polynomial<F>],
    leads: Vec<(u64, Monomial)>,
}

impl<'a, F: Field> Divisors<'a, F> {
    fn new(polys: &'a [Polynomial<F>]) -> Self {
        let leads = polys
            .iter()
            .map(|g| {
                let m = g.leading_monomial().expect("nonzero divisor").clone();
                (m.divmask(), m)
            })
            .collect();
        Divisors { polys, leads }
    }

    /// The divisor with the greatest leading monomial dividing `m`, first
    /// index on ties.
    fn find(&self, m: &Monomial) -> Option<usize> {
        let mask = m.divmask();
        let mut best: Option<usize> = None;
        for (i, (dm, lm)) in self.leads.iter().enumerate() {
            if dm & !mask != 0 || !lm.divides(m) {
                continue;
            }
            match best {
                Some(b) if self.leads[b].1 >= *lm => {}
                _ => best = Some(i),
            }
        }
        best
    }
}

/// Full reduction of `f`. Calls `record` for every step.
fn reduce_with<F: Field>(
    f: &Polynomial<F>,
    divs: &Divisors<'_, F>,
    mut record: impl FnMut(usize, &F::Elem, &Monomial),
    max_terms: usize,
) -> Result<Polynomial<F>> {
    let field = f.field();
    let mut p = f.clone();
    let mut rem: Vec<(F::Elem, Monomial)> = Vec::new();
    // The part of `p` already known to be irreducible is moved to `rem`;
    // since reduction only affects terms below the current one, `rem`
    // stays sorted.
    loop {
        let mut moved = 0;
        let terms = p.terms();
        let mut hit = None;
        for (c, m) in terms {
            if let Some(i) = divs.find(m) {
                hit = Some((i, c.clone(), m.clone()));
                break;
            }
            moved += 1;
        }
        rem.extend(terms[..moved].iter().cloned());
        let Some((i, c, m)) = hit else {
            break;
        };
        let g = &divs.polys[i];
        let (gc, gm) = g.leading_term().expect("nonzero divisor");
        let q = m.div(gm).expect("divides");
        let coef = field.mul(&c, &field.inv(gc).expect("nonzero"));
        record(i, &coef, &q);
        let rest = Polynomial::from_sorted_terms(p.ring(), field, p.terms()[moved..].to_vec());
        p = rest.sub_scaled(&coef, &q, g);
        if p.len() + rem.len() > max_terms {
            return Err(Error::ResourceLimit(format!(
                "intermediate remainder exceeds {max_terms} terms"
            )));
        }
    }
    Ok(Polynomial::from_sorted_terms(f.ring(), field, rem))
}

fn reduce_plain<F: Field>(f: &Polynomial<F>, divs: &Divisors<'_, F>) -> Polynomial<F> {
    reduce_with(f, divs, |_, _, _| {}, usize::MAX).expect("no term limit")
}

/// Divides `f` by `basis` with full reduction of all terms and returns the
/// trace. At each step the eligible divisor with the greatest leading
/// monomial is used, the lowest index on ties.
pub fn normal_form<F: Field>(f: &Polynomial<F>, basis: &[Polynomial<F>]) -> Result<ReductionTrace<F>> {
    for g in basis {
        check_compatible(g, f.ring(), f.field())?;
        if g.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
    }
    let divs = Divisors::new(basis);
    let mut steps = Vec::new();
    let remainder = reduce_with(
        f,
        &divs,
        |divisor, coef, monomial| {
            steps.push(ReductionStep {
                divisor,
                coef: coef.clone(),
                monomial: monomial.clone(),
            })
        },
        usize::MAX,
    )?;
    Ok(ReductionTrace {
        input: f.clone(),
        steps,
        remainder,
    })
}

/// The S-polynomial of two nonzero polynomials, formed from their monic
/// copies.
pub fn s_polynomial<F: Field>(g1: &Polynomial<F>, g2: &Polynomial<F>) -> Result<Polynomial<F>> {
    check_compatible(g2, g1.ring(), g1.field())?;
    let (c1, m1) = g1.leading_term()?;
    let (c2, m2) = g2.leading_term()?;
    let field = g1.field();
    let lcm = m1.lcm(m2);
    let a = g1.mul_term(&field.inv(c1).expect("nonzero"), &lcm.div(m1).expect("divides"));
    let b_coef = field.inv(c2).expect("nonzero");
    Ok(a.sub_scaled(&b_coef, &lcm.div(m2).expect("divides"), g2))
}

/// Removes elements whose leading monomial is divisible by another's and
/// fully reduces the rest; output monic, sorted by leading monomial.
fn interreduce<F: Field>(elements: Vec<Polynomial<F>>) -> Vec<Polynomial<F>> {
    let leads: Vec<Monomial> = elements
        .iter()
        .map(|g| g.leading_monomial().expect("nonzero").clone())
        .collect();
    let keep: Vec<bool> = (0..elements.len())
        .map(|i| {
            !(0..elements.len()).any(|j| {
                j != i && leads[j].divides(&leads[i]) && (leads[j] != leads[i] || j < i)
            })
        })
        .collect();
    let minimal: Vec<Polynomial<F>> = elements
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect();
    let mut reduced: Vec<Polynomial<F>> = minimal
        .par_iter()
        .enumerate()
        .map(|(i, g)| {
            // Reduce the tail against the others; the leading monomial is
            // divisible by none of them.
            let others: Vec<Polynomial<F>> = minimal
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, h)| h.clone())
                .collect();
            let (c, m) = g.leading_term().expect("nonzero");
            let head = Polynomial::term(g.ring(), g.field(), c.clone(), m.clone());
            let tail = g.try_sub(&head).expect("same ring");
            let tail = if others.is_empty() {
                tail
            } else {
                reduce_plain(&tail, &Divisors::new(&others))
            };
            head.try_add(&tail).expect("same ring").monic()
        })
        .collect();
    reduced.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    reduced
}

type PairKey = (u32, Monomial, usize, usize);

struct PairQueue {
    queue: BTreeSet<PairKey>,
    pending: HashSet<(usize, usize)>,
    created: usize,
}

/// Buchberger's algorithm with the normal selection strategy: pairs are
/// taken in batches of equal smallest lcm degree, ordered by lcm (lex,
/// ascending) and then by index. Each batch is reduced in parallel against
/// the basis as it stood at the start of the batch; new elements are then
/// added one at a time in batch order. The batch composition does not
/// depend on the number of worker threads, so neither does any
/// intermediate state.
pub fn buchberger<F: Field>(
    gens: &[Polynomial<F>],
    ring: Ring,
    field: F,
    limits: &Limits,
) -> Result<GroebnerBasis<F>> {
    const BATCH: usize = 512;
    for g in gens {
        check_compatible(g, ring, field)?;
    }
    let mut basis: Vec<Polynomial<F>> = Vec::new();
    let mut leads: Vec<Monomial> = Vec::new();
    let mut pairs = PairQueue {
        queue: BTreeSet::new(),
        pending: HashSet::new(),
        created: 0,
    };
    let mut total_terms = 0usize;

    let mut add = |h: Polynomial<F>,
                   basis: &mut Vec<Polynomial<F>>,
                   leads: &mut Vec<Monomial>,
                   pairs: &mut PairQueue|
     -> Result<()> {
        let h = h.monic();
        let lm = h.leading_monomial().expect("nonzero").clone();
        let n = basis.len();
        total_terms += h.len();
        if total_terms > limits.max_terms {
            return Err(Error::ResourceLimit(format!(
                "basis exceeds {} terms",
                limits.max_terms
            )));
        }
        for (i, li) in leads.iter().enumerate() {
            pairs.created += 1;
            if li.is_coprime(&lm) {
                continue;
            }
            let lcm = li.lcm(&lm);
            pairs.queue.insert((lcm.degree(), lcm, i, n));
            pairs.pending.insert((i, n));
        }
        if pairs.created > limits.max_pairs {
            return Err(Error::ResourceLimit(format!(
                "more than {} critical pairs",
                limits.max_pairs
            )));
        }
        basis.push(h);
        leads.push(lm);
        Ok(())
    };

    let mut start: Vec<Polynomial<F>> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    start.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    start.dedup();
    if start.iter().any(|g| g.leading_monomial().is_some_and(Monomial::is_one)) {
        return Ok(GroebnerBasis {
            ring,
            field,
            order: TermOrder::for_ring(&ring),
            elements: vec![Polynomial::constant(ring, field, field.one())],
        });
    }
    for g in start {
        add(g, &mut basis, &mut leads, &mut pairs)?;
    }

    while let Some(first) = pairs.queue.first() {
        let degree = first.0;
        if degree > limits.max_degree {
            return Err(Error::ResourceLimit(format!(
                "critical pair of degree {degree} exceeds the limit {}",
                limits.max_degree
            )));
        }
        let mut batch: Vec<(usize, usize)> = Vec::new();
        while batch.len() < BATCH {
            match pairs.queue.first() {
                Some(key) if key.0 == degree => {
                    let (_, lcm, i, j) = pairs.queue.pop_first().expect("nonempty");
                    pairs.pending.remove(&(i, j));
                    if limits.chain_criterion && chain_skips(&leads, &pairs.pending, &lcm, i, j) {
                        continue;
                    }
                    batch.push((i, j));
                }
                _ => break,
            }
        }
        let snapshot = &basis;
        let divs = Divisors::new(snapshot);
        let remainders: Vec<Polynomial<F>> = batch
            .par_iter()
            .map(|&(i, j)| {
                let s = s_polynomial(&snapshot[i], &snapshot[j])?;
                reduce_with(&s, &divs, |_, _, _| {}, limits.max_terms)
            })
            .collect::<Result<_>>()?;
        drop(divs);
        let before = basis.len();
        for r in remainders {
            if r.is_zero() {
                continue;
            }
            // Reduce further against elements added earlier in this batch.
            let r = if basis.len() > before {
                let divs = Divisors::new(&basis[before..]);
                let r = reduce_with(&r, &divs, |_, _, _| {}, limits.max_terms)?;
                if r.is_zero() {
                    continue;
                }
                reduce_plain(&r, &Divisors::new(&basis))
            } else {
                r
            };
            if r.is_zero() {
                continue;
            }
            if r.leading_monomial().is_some_and(Monomial::is_one) {
                return Ok(GroebnerBasis {
                    ring,
                    field,
                    order: TermOrder::for_ring(&ring),
                    elements: vec![Polynomial::constant(ring, field, field.one())],
                });
            }
            add(r, &mut basis, &mut leads, &mut pairs)?;
        }
    }

    Ok(GroebnerBasis {
        ring,
        field,
        order: TermOrder::for_ring(&ring),
        elements: interreduce(basis),
    })
}

/// Buchberger's chain criterion: the pair `(i, j)` may be skipped if some
/// other leading monomial divides its lcm and both pairs linking it to `i`
/// and `j` are no longer pending.
fn chain_skips(
    leads: &[Monomial],
    pending: &HashSet<(usize, usize)>,
    lcm: &Monomial,
    i: usize,
    j: usize,
) -> bool {
    let ordered = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
    leads.iter().enumerate().any(|(k, lk)| {
        k != i
            && k != j
            && lk.divides(lcm)
            && !pending.contains(&ordered(i, k))
            && !pending.contains(&ordered(j, k))
    })
}

/// A pair whose S-polynomial does not reduce to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct PairWitness<F: Field> {
    pub i: usize,
    pub j: usize,
    pub remainder: Polynomial<F>,
}

/// Outcome of checking Buchberger's criterion on a generating set.
#[derive(Debug, Clone, PartialEq)]
pub struct GroebnerCheck<F: Field> {
    pub pairs_total: usize,
    pub pairs_coprime: usize,
    /// Traces that were replayed and matched their input.
    pub traces_replayed: usize,
    pub trace_failures: Vec<(usize, usize)>,
    /// The first failing pair in index order.
    pub witness: Option<PairWitness<F>>,
}

impl<F: Field> GroebnerCheck<F> {
    pub fn passed(&self) -> bool {
        self.witness.is_none() && self.trace_failures.is_empty()
    }
}

/// Checks that every pair of generators with non-coprime leading terms has
/// an S-polynomial reducing to zero. With `replay`, every reduction trace
/// is recomputed and compared with its S-polynomial.
pub fn is_groebner<F: Field>(gens: &[Polynomial<F>], replay: bool) -> Result<GroebnerCheck<F>> {
    if gens.iter().any(Polynomial::is_zero) {
        return Err(Error::ZeroPolynomial);
    }
    if let Some(g) = gens.first() {
        for h in gens {
            check_compatible(h, g.ring(), g.field())?;
        }
    }
    let leads: Vec<&Monomial> = gens.iter().map(|g| g.leading_monomial().expect("nonzero")).collect();
    let n = gens.len();
    let all: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let pairs: Vec<(usize, usize)> = all.iter().copied().filter(|&(i, j)| !leads[i].is_coprime(leads[j])).collect();
    let divs = Divisors::new(gens);
    let results: Vec<(Polynomial<F>, bool)> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let s = s_polynomial(&gens[i], &gens[j])?;
            if replay {
                let trace = normal_form(&s, gens)?;
                let ok = trace.replay(gens);
                Ok((trace.remainder, ok))
            } else {
                Ok((reduce_plain(&s, &divs), true))
            }
        })
        .collect::<Result<_>>()?;
    let mut check = GroebnerCheck {
        pairs_total: all.len(),
        pairs_coprime: all.len() - pairs.len(),
        traces_replayed: 0,
        trace_failures: Vec::new(),
        witness: None,
    };
    for (&(i, j), (rem, ok)) in pairs.iter().zip(results) {
        if replay {
            if ok {
                check.traces_replayed += 1;
            } else {
                check.trace_failures.push((i, j));
            }
        }
        if !rem.is_zero() && check.witness.is_none() {
            check.witness = Some(PairWitness { i, j, remainder: rem });
        }
    }
    Ok(check)
}

/// Index of the first generator of `sub` not in the ideal with basis `gb`.
pub fn first_non_member<F: Field>(gb: &GroebnerBasis<F>, sub: &[Polynomial<F>]) -> Result<Option<usize>> {
    for g in sub {
        check_compatible(g, gb.ring(), gb.field())?;
    }
    let divs = Divisors::new(gb.elements());
    let flags: Vec<bool> = sub.par_iter().map(|g| reduce_plain(g, &divs).is_zero()).collect();
    Ok(flags.iter().position(|&ok| !ok))
}

/// `J ⊆ I`: every generator of `j` reduces to zero modulo a Gröbner basis
/// of `i`.
pub fn ideal_contains<F: Field>(i: &Ideal<F>, j: &Ideal<F>, limits: &Limits) -> Result<bool> {
    if i.ring() != j.ring() || i.field() != j.field() {
        return Err(Error::Incompatible("ideals over different rings".into()));
    }
    let gb = i.groebner_basis(limits)?;
    Ok(first_non_member(&gb, j.generators())?.is_none())
}

pub fn ideal_equal<F: Field>(i: &Ideal<F>, j: &Ideal<F>, limits: &Limits) -> Result<bool> {
    Ok(ideal_contains(i, j, limits)? && ideal_contains(j, i, limits)?)
}

/// Result of the squarefree test on leading monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RadicalCertificate {
    /// Every leading monomial is squarefree, so the ideal is radical.
    Squarefree,
    /// Some leading monomial has an exponent above one; nothing follows.
    Inconclusive { element: usize, monomial: Monomial },
}

impl RadicalCertificate {
    pub fn is_squarefree(&self) -> bool {
        matches!(self, RadicalCertificate::Squarefree)
    }
}

pub fn radical_certificate<F: Field>(gb: &GroebnerBasis<F>) -> RadicalCertificate {
    for (element, g) in gb.elements().iter().enumerate() {
        let m = g.leading_monomial().expect("nonzero");
        if !m.is_squarefree() {
            return RadicalCertificate::Inconclusive {
                element,
                monomial: m.clone(),
            };
        }
    }
    RadicalCertificate::Squarefree
}

/// `I ∩ J` as the elimination ideal of `t I + (1 - t) J`, with `t` an
/// auxiliary variable greater than all matrix variables. Returns the
/// reduced Gröbner basis of the intersection.
pub fn intersect_generators<F: Field>(
    i: &[Polynomial<F>],
    j: &[Polynomial<F>],
    ring: Ring,
    field: F,
    limits: &Limits,
) -> Result<GroebnerBasis<F>> {
    if ring.aux != 0 {
        return Err(Error::Incompatible("intersection expects a ring without auxiliary variables".into()));
    }
    for g in i.iter().chain(j) {
        check_compatible(g, ring, field)?;
    }
    let ext = ring.with_aux(1);
    let lift = |g: &Polynomial<F>| g.map_ring(ext, |v| v + 1);
    let t = Monomial::var(0);
    let one = field.one();
    let mut gens = Vec::with_capacity(i.len() + j.len());
    for g in i {
        gens.push(lift(g).mul_term(&one, &t));
    }
    for g in j {
        let h = lift(g);
        gens.push(h.sub_scaled(&one, &t, &h));
    }
    let gb = buchberger(&gens, ext, field, limits)?;
    let kept: Vec<Polynomial<F>> = gb
        .elements()
        .iter()
        .filter(|g| g.terms().iter().all(|(_, m)| m.exponent(0) == 0))
        .map(|g| g.map_ring(ring, |v| v - 1))
        .collect();
    // The elimination property makes `kept` a Gröbner basis already.
    GroebnerBasis::from_elements(ring, field, kept)
}

/// The intersection of a nonempty list of ideals, as an ideal whose
/// generators are the reduced Gröbner basis of the intersection.
pub fn intersect<F: Field>(ideals: &[&Ideal<F>], limits: &Limits) -> Result<Ideal<F>> {
    let (first, rest) = ideals
        .split_first()
        .ok_or_else(|| Error::InvalidSize("intersection of no ideals".into()))?;
    let ring = first.ring();
    let field = first.field();
    let mut acc: Vec<Polynomial<F>> = first.groebner_basis(limits)?.elements().to_vec();
    for other in rest {
        if other.ring() != ring || other.field() != field {
            return Err(Error::Incompatible("ideals over different rings".into()));
        }
        acc = intersect_generators(&acc, other.generators(), ring, field, limits)?
            .elements()
            .to_vec();
    }
    let ideal = Ideal::new(ring, field, acc.clone())?;
    ideal.install_basis(std::sync::Arc::new(GroebnerBasis::from_elements(ring, field, acc)?))?;
    Ok(match first.grid() {
        Some(g) => ideal.with_grid(g),
        None => ideal,
    })
}

/// Content hash identifying a basis computation: generators, order and
/// field.
pub fn cache_key<F: Field>(gens: &[Polynomial<F>], ring: Ring, field: F) -> Result<String> {
    #[derive(Serialize)]
    struct Key<'a> {
        order: TermOrder,
        field: FieldKind,
        rows: usize,
        cols: usize,
        generators: &'a [PolynomialJson],
    }
    let generators: Vec<PolynomialJson> = gens.iter().map(|g| g.to_json()).collect::<Result<_>>()?;
    let key = Key {
        order: TermOrder::for_ring(&ring),
        field: field.kind(),
        rows: ring.rows,
        cols: ring.cols,
        generators: &generators,
    };
    let bytes = serde_json::to_vec(&key)?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

/// A directory of cached bases, one JSON file per key.
#[derive(Debug, Clone)]
pub struct BasisCache {
    dir: PathBuf,
}

impl BasisCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        BasisCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn load<F: Field>(&self, ideal: &Ideal<F>) -> Result<Option<GroebnerBasis<F>>> {
        let key = cache_key(ideal.generators(), ideal.ring(), ideal.field())?;
        let path = self.path(&key);
        if !path.exists() {
            return Ok(None);
        }
        let json: GroebnerBasisJson = serde_json::from_slice(&std::fs::read(&path)?)?;
        Ok(Some(GroebnerBasis::from_json(ideal.field(), &json)?))
    }

    pub fn store<F: Field>(&self, ideal: &Ideal<F>, gb: &GroebnerBasis<F>) -> Result<PathBuf> {
        let key = cache_key(ideal.generators(), ideal.ring(), ideal.field())?;
        std::fs::create_dir_all(&self.dir)?;
        let path = self.path(&key);
        std::fs::write(&path, serde_json::to_vec(&gb.to_json()?)?)?;
        Ok(path)
    }

    /// Loads the basis if cached, otherwise computes and stores it; either
    /// way installs it in the ideal.
    pub fn basis<F: Field>(
        &self,
        ideal: &Ideal<F>,
        limits: &Limits,
    ) -> Result<std::sync::Arc<GroebnerBasis<F>>> {
        if let Some(gb) = ideal.cached_basis() {
            return Ok(gb);
        }
        if let Some(gb) = self.load(ideal)? {
            ideal.install_basis(std::sync::Arc::new(gb))?;
            return Ok(ideal.cached_basis().expect("installed"));
        }
        let gb = ideal.groebner_basis(limits)?;
        self.store(ideal, &gb)?;
        Ok(gb)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{self, Grid};
    use crate::ideals::{self, MinorSpec};
    use crate::poly::{PrimeField, Rationals, VariableId};

    fn var(ring: Ring, r: usize, c: usize) -> Polynomial<Rationals> {
        Polynomial::var(ring, Rationals, VariableId::new(r, c)).unwrap()
    }

    fn minor(ring: Ring, rows: &[usize], cols: &[usize]) -> Polynomial<Rationals> {
        ideals::minor(ring, Rationals, &MinorSpec::new(rows.to_vec(), cols.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn normal_form_examples() {
        let g = Grid::new(2, 3).unwrap();
        let i0 = ideals::i0_ideal(&g, 3, 3, Rationals).unwrap();
        let ring = i0.ring();
        let basis = i0.generators();
        for f in basis {
            let tr = normal_form(f, basis).unwrap();
            assert!(tr.remainder.is_zero());
            assert!(tr.replay(basis));
        }
        let f = &(&var(ring, 1, 1) * &minor(ring, &[1, 2], &[3, 4])) + &var(ring, 3, 6);
        let tr = normal_form(&f, basis).unwrap();
        assert_eq!(tr.remainder, var(ring, 3, 6));
        assert!(tr.replay(basis));
        let zero = Polynomial::zero(ring, Rationals);
        let tr = normal_form(&zero, basis).unwrap();
        assert!(tr.remainder.is_zero() && tr.steps.is_empty());
    }

    #[test]
    fn divisor_choice_prefers_greatest_leading_term() {
        let ring = Ring::new(1, 3);
        let x = var(ring, 1, 1);
        let y = var(ring, 1, 2);
        let xy = &x * &y;
        // Both x and x*y divide x*y; the larger x*y must be chosen.
        let tr = normal_form(&xy, &[x.clone(), xy.clone()]).unwrap();
        assert_eq!(tr.steps[0].divisor, 1);
        let tr = normal_form(&xy, &[x.clone(), x.clone()]).unwrap();
        assert_eq!(tr.steps[0].divisor, 0);
    }

    #[test]
    fn s_polynomial_examples() {
        let ring = Ring::new(3, 2);
        let g1 = minor(ring, &[1, 2], &[1, 2]);
        let g2 = minor(ring, &[1, 3], &[1, 2]);
        let g3 = minor(ring, &[2, 3], &[1, 2]);
        let s = s_polynomial(&g1, &g2).unwrap();
        assert!(!s.is_zero());
        let gens = [g1.clone(), g2.clone(), g3.clone()];
        let tr = normal_form(&s, &gens).unwrap();
        assert!(tr.remainder.is_zero());
        assert!(tr.steps.iter().any(|st| st.divisor == 2));
        assert!(s_polynomial(&g1, &g1).unwrap().is_zero());
        // Coprime leading terms reduce to zero against the pair.
        let a = var(ring, 1, 1);
        let b = &var(ring, 2, 2) + &var(ring, 3, 1);
        let s = s_polynomial(&a, &b).unwrap();
        assert!(normal_form(&s, &[a, b]).unwrap().remainder.is_zero());
    }

    #[test]
    fn is_groebner_failure_witness() {
        let ring = Ring::new(2, 2);
        let g = minor(ring, &[1, 2], &[1, 2]);
        let check = is_groebner(&[g, var(ring, 1, 1)], true).unwrap();
        assert!(!check.passed());
        let w = check.witness.unwrap();
        assert_eq!((w.i, w.j), (0, 1));
        assert_eq!(w.remainder, &var(ring, 1, 2) * &var(ring, 2, 1).scale(&crate::poly::Rational::from_integer(-1)));
    }

    #[test]
    fn component_generators_form_groebner_bases() {
        let g = Grid::new(2, 3).unwrap();
        let i0 = ideals::i0_ideal(&g, 3, 3, Rationals).unwrap();
        let check = is_groebner(i0.generators(), true).unwrap();
        assert!(check.passed());
        assert_eq!(check.traces_replayed + check.pairs_coprime, check.pairs_total);
        let gb = i0.groebner_basis(&Limits::default()).unwrap();
        let mut expected: Vec<_> = i0.generators().iter().map(|p| p.monic()).collect();
        expected.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
        assert_eq!(gb.elements(), &expected[..]);
        for s in grid::script_l(&g).unwrap() {
            let is = ideals::ideal_is(&g, 3, 2, &s, Rationals, false).unwrap();
            assert!(is_groebner(is.generators(), true).unwrap().passed(), "{s:?}");
        }
    }

    #[test]
    fn buchberger_small_instance() {
        let j = ideals::ci_ideal(&ideals::Instance::main(2, 2, 2).unwrap(), Rationals).unwrap();
        assert_eq!(j.generators().len(), 4);
        let gb = buchberger(j.generators(), j.ring(), Rationals, &Limits::default()).unwrap();
        assert!(is_groebner(gb.elements(), true).unwrap().passed());
        for f in j.generators() {
            assert!(gb.contains(f).unwrap());
        }
        // Idempotent.
        let again = buchberger(gb.elements(), j.ring(), Rationals, &Limits::default()).unwrap();
        assert_eq!(again, gb);
        // Chain criterion does not change the result.
        let chained = Limits {
            chain_criterion: true,
            ..Limits::default()
        };
        assert_eq!(buchberger(j.generators(), j.ring(), Rationals, &chained).unwrap(), gb);
        // Schedule independence: reversed input order.
        let rev: Vec<_> = j.generators().iter().rev().cloned().collect();
        assert_eq!(buchberger(&rev, j.ring(), Rationals, &Limits::default()).unwrap(), gb);
    }

    #[test]
    fn resource_limits() {
        let j = ideals::ci_ideal(&ideals::Instance::main(2, 2, 2).unwrap(), Rationals).unwrap();
        let tight = Limits {
            max_pairs: 1,
            ..Limits::default()
        };
        assert!(matches!(
            buchberger(j.generators(), j.ring(), Rationals, &tight),
            Err(Error::ResourceLimit(_))
        ));
        let low_degree = Limits {
            max_degree: 1,
            ..Limits::default()
        };
        assert!(matches!(
            buchberger(j.generators(), j.ring(), Rationals, &low_degree),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn containment_examples() {
        let g = Grid::new(2, 3).unwrap();
        let lim = Limits::default();
        let j = ideals::ci_ideal(&ideals::Instance::main(2, 3, 3).unwrap(), Rationals).unwrap();
        let i14 = ideals::ideal_is(&g, 3, 2, &[1, 4], Rationals, false).unwrap();
        let i16 = ideals::ideal_is(&g, 3, 2, &[1, 6], Rationals, false).unwrap();
        assert!(ideal_contains(&i14, &j, &lim).unwrap());
        assert!(!ideal_contains(&i14, &i16, &lim).unwrap());
        assert!(!ideal_contains(&i16, &i14, &lim).unwrap());
        assert!(ideal_equal(&i14, &i14, &lim).unwrap());
        let full = ideals::ideal_is(&g, 3, 2, &[1, 4], Rationals, true).unwrap();
        assert!(ideal_equal(&i14, &full, &lim).unwrap());
    }

    #[test]
    fn radical_certificates() {
        let ring = Ring::new(1, 1);
        let x = var(ring, 1, 1);
        let sq = Ideal::new(ring, Rationals, vec![&x * &x]).unwrap();
        let gb = sq.groebner_basis(&Limits::default()).unwrap();
        assert!(!radical_certificate(&gb).is_squarefree());
        let g = Grid::new(2, 3).unwrap();
        let is = ideals::ideal_is(&g, 3, 2, &[1, 4], Rationals, false).unwrap();
        assert!(radical_certificate(&is.groebner_basis(&Limits::default()).unwrap()).is_squarefree());
    }

    #[test]
    fn intersections() {
        let ring = Ring::new(1, 2);
        let lim = Limits::default();
        let x = Ideal::new(ring, Rationals, vec![var(ring, 1, 1)]).unwrap();
        let y = Ideal::new(ring, Rationals, vec![var(ring, 1, 2)]).unwrap();
        let xy = intersect(&[&x, &y], &lim).unwrap();
        assert_eq!(xy.generators(), &[&var(ring, 1, 1) * &var(ring, 1, 2)]);
        let xx = intersect(&[&x, &x], &lim).unwrap();
        assert!(ideal_equal(&xx, &x, &lim).unwrap());

        let g = Grid::new(2, 3).unwrap();
        let i14 = ideals::ideal_is(&g, 3, 2, &[1, 4], Rationals, false).unwrap();
        let self_meet = intersect(&[&i14, &i14], &lim).unwrap();
        assert!(ideal_equal(&self_meet, &i14, &lim).unwrap());
    }

    #[test]
    fn prime_field_matches_rationals_on_leading_terms() {
        let inst = ideals::Instance::main(2, 2, 2).unwrap();
        let q = ideals::ci_ideal(&inst, Rationals).unwrap();
        let p = ideals::ci_ideal(&inst, PrimeField::default()).unwrap();
        let lq = q.groebner_basis(&Limits::default()).unwrap().leading_monomials();
        let lp = p.groebner_basis(&Limits::default()).unwrap().leading_monomials();
        assert_eq!(lq, lp);
    }

    #[test]
    fn cache_round_trip() {
        let dir = std::env::temp_dir().join(format!("cia-cache-test-{}", std::process::id()));
        let cache = BasisCache::new(&dir);
        let mk = || ideals::ci_ideal(&ideals::Instance::main(2, 2, 2).unwrap(), Rationals).unwrap();
        let first = mk();
        let gb = cache.basis(&first, &Limits::default()).unwrap();
        let second = mk();
        let loaded = cache.load(&second).unwrap().expect("cached");
        assert_eq!(&loaded, gb.as_ref());
        let k1 = cache_key(first.generators(), first.ring(), Rationals).unwrap();
        let modp = ideals::ci_ideal(&ideals::Instance::main(2, 2, 2).unwrap(), PrimeField::default()).unwrap();
        let k2 = cache_key(modp.generators(), modp.ring(), PrimeField::default()).unwrap();
        assert_ne!(k1, k2);
        std::fs::remove_dir_all(&dir).ok();
    }
}

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::field::Field;
use super::monomial::{Monomial, VarIndex};
use crate::error::{Error, Result};

/// The polynomial ring `K[P]` over a `rows x cols` matrix of indeterminates
/// `p_{x,y}`, optionally extended by `aux` auxiliary variables that are
/// greater than every matrix variable (used for elimination).
///
/// Variable indices: auxiliary variables come first, then the matrix
/// variables in row-major order, `index = aux + (x-1)*cols + (y-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Ring {
    pub rows: usize,
    pub cols: usize,
    #[serde(default)]
    pub aux: usize,
}

/// A matrix variable `p_{row,col}`, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VariableId {
    pub row: usize,
    pub col: usize,
}

impl VariableId {
    pub fn new(row: usize, col: usize) -> Self {
        VariableId { row, col }
    }
}

impl fmt::Display for VariableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p_{{{},{}}}", self.row, self.col)
    }
}

impl Ring {
    pub fn new(rows: usize, cols: usize) -> Self {
        Ring { rows, cols, aux: 0 }
    }

    pub fn with_aux(self, aux: usize) -> Self {
        Ring { aux, ..self }
    }

    /// The ring without auxiliary variables.
    pub fn base(self) -> Self {
        Ring { aux: 0, ..self }
    }

    pub fn nvars(&self) -> usize {
        self.aux + self.rows * self.cols
    }

    pub fn check(&self, id: VariableId) -> Result<()> {
        if id.row == 0 || id.row > self.rows || id.col == 0 || id.col > self.cols {
            return Err(Error::VariableOutOfBounds {
                row: id.row,
                col: id.col,
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(())
    }

    pub fn index(&self, id: VariableId) -> Result<VarIndex> {
        self.check(id)?;
        Ok(self.index_unchecked(id))
    }

    pub(crate) fn index_unchecked(&self, id: VariableId) -> VarIndex {
        (self.aux + (id.row - 1) * self.cols + (id.col - 1)) as VarIndex
    }

    /// The matrix variable behind an index, or `None` for an auxiliary one.
    pub fn variable(&self, idx: VarIndex) -> Option<VariableId> {
        let idx = idx as usize;
        if idx < self.aux || idx >= self.nvars() {
            return None;
        }
        let off = idx - self.aux;
        Some(VariableId::new(off / self.cols + 1, off % self.cols + 1))
    }

    pub fn var_name(&self, idx: VarIndex) -> String {
        match self.variable(idx) {
            Some(id) => id.to_string(),
            None if self.aux == 1 => "t".to_string(),
            None => format!("t{idx}"),
        }
    }

    pub fn monomial(&self, vars: &[VariableId]) -> Result<Monomial> {
        let idx = vars.iter().map(|&v| self.index(v)).collect::<Result<Vec<_>>>()?;
        Ok(Monomial::from_vars(idx))
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".to_string();
        }
        m.factors()
            .iter()
            .map(|&(v, e)| {
                if e == 1 {
                    self.var_name(v)
                } else {
                    format!("{}^{e}", self.var_name(v))
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Compares two matrix variables in the term order: the variable in the
/// smaller row is greater, and within a row the smaller column is greater.
pub fn var_cmp(ring: &Ring, u: VariableId, v: VariableId) -> Result<Ordering> {
    ring.check(u)?;
    ring.check(v)?;
    Ok((v.row, v.col).cmp(&(u.row, u.col)))
}

/// Compares two monomials in the lexicographic term order.
pub fn mono_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    a.cmp(b)
}

/// A sparse polynomial: nonzero terms sorted strictly decreasing in the term
/// order, so the leading term is `terms[0]`. The zero polynomial has no terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<F: Field> {
    ring: Ring,
    field: F,
    terms: Vec<(F::Elem, Monomial)>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: Ring, field: F) -> Self {
        Polynomial {
            ring,
            field,
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: Ring, field: F, c: F::Elem) -> Self {
        Self::term(ring, field, c, Monomial::one())
    }

    pub fn term(ring: Ring, field: F, c: F::Elem, m: Monomial) -> Self {
        let terms = if field.is_zero(&c) { Vec::new() } else { vec![(c, m)] };
        Polynomial { ring, field, terms }
    }

    pub fn var(ring: Ring, field: F, id: VariableId) -> Result<Self> {
        let idx = ring.index(id)?;
        Ok(Self::term(ring, field, field.one(), Monomial::var(idx)))
    }

    /// Collects arbitrary terms: sorts, merges equal monomials, drops zeros.
    pub fn from_terms<I>(ring: Ring, field: F, terms: I) -> Self
    where
        I: IntoIterator<Item = (F::Elem, Monomial)>,
    {
        let mut terms: Vec<(F::Elem, Monomial)> = terms.into_iter().collect();
        terms.sort_by(|a, b| b.1.cmp(&a.1));
        let mut out: Vec<(F::Elem, Monomial)> = Vec::with_capacity(terms.len());
        for (c, m) in terms {
            match out.last_mut() {
                Some((lc, lm)) if *lm == m => *lc = field.add(lc, &c),
                _ => out.push((c, m)),
            }
        }
        out.retain(|(c, _)| !field.is_zero(c));
        Polynomial {
            ring,
            field,
            terms: out,
        }
    }

    /// Wraps terms that already satisfy the ordering invariant.
    pub(crate) fn from_sorted_terms(ring: Ring, field: F, terms: Vec<(F::Elem, Monomial)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].1 > w[1].1));
        debug_assert!(terms.iter().all(|(c, _)| !field.is_zero(c)));
        Polynomial { ring, field, terms }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn terms(&self) -> &[(F::Elem, Monomial)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(F::Elem, Monomial)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Result<(&F::Elem, &Monomial)> {
        self.terms
            .first()
            .map(|(c, m)| (c, m))
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(_, m)| m)
    }

    pub fn leading_coefficient(&self) -> Option<&F::Elem> {
        self.terms.first().map(|(c, _)| c)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(_, m)| m.degree()).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms
            .windows(2)
            .all(|w| w[0].1.degree() == w[1].1.degree())
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::Incompatible(format!(
                "ring {:?} vs {:?}",
                self.ring, other.ring
            )));
        }
        if self.field != other.field {
            return Err(Error::Incompatible(format!(
                "field {} vs {}",
                self.field.kind(),
                other.field.kind()
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Ok(self.product(other))
    }

    fn merge(&self, other: &Self, subtract: bool) -> Self {
        let f = self.field;
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let other_coeff = |c: &F::Elem| if subtract { f.neg(c) } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].1.cmp(&b[j].1) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((other_coeff(&b[j].0), b[j].1.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if subtract {
                        f.sub(&a[i].0, &b[j].0)
                    } else {
                        f.add(&a[i].0, &b[j].0)
                    };
                    if !f.is_zero(&c) {
                        out.push((c, a[i].1.clone()));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(c, m)| (other_coeff(c), m.clone())));
        Self::from_sorted_terms(self.ring, f, out)
    }

    fn product(&self, other: &Self) -> Self {
        let f = self.field;
        if other.terms.len() == 1 {
            let (c, m) = &other.terms[0];
            return self.mul_term(c, m);
        }
        if self.terms.len() == 1 {
            let (c, m) = &self.terms[0];
            return other.mul_term(c, m);
        }
        let mut acc = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (c, m) in &self.terms {
            for (d, n) in &other.terms {
                acc.push((f.mul(c, d), m.mul(n)));
            }
        }
        Self::from_terms(self.ring, f, acc)
    }

    /// Multiplies by the single term `c * m`.
    pub fn mul_term(&self, c: &F::Elem, m: &Monomial) -> Self {
        let f = self.field;
        if f.is_zero(c) {
            return Self::zero(self.ring, f);
        }
        let terms = self
            .terms
            .iter()
            .map(|(d, n)| (f.mul(c, d), n.mul(m)))
            .collect();
        Self::from_sorted_terms(self.ring, f, terms)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        self.mul_term(c, &Monomial::one())
    }

    /// Divides by the leading coefficient. The zero polynomial is returned
    /// unchanged.
    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            Some(lc) if !self.field.is_one(lc) => {
                let inv = self.field.inv(lc).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
            _ => self.clone(),
        }
    }

    /// `self - c * m * g`, the elementary reduction step.
    pub fn sub_scaled(&self, c: &F::Elem, m: &Monomial, g: &Self) -> Self {
        let f = self.field;
        let neg = f.neg(c);
        let shifted = g.mul_term(&neg, m);
        self.merge(&shifted, false)
    }

    /// Moves the polynomial into another ring by renaming variables through
    /// `f`, which must be strictly increasing on the variables that occur.
    pub fn map_ring(&self, ring: Ring, f: impl Fn(VarIndex) -> VarIndex) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(c, m)| (c.clone(), m.map_vars(&f)))
            .collect();
        Polynomial {
            ring,
            field: self.field,
            terms,
        }
    }

    /// Evaluates at a point given as values of all ring variables by index.
    pub fn evaluate(&self, point: &[F::Elem]) -> Result<F::Elem> {
        if point.len() != self.ring.nvars() {
            return Err(Error::Incompatible(format!(
                "point has {} coordinates, ring has {} variables",
                point.len(),
                self.ring.nvars()
            )));
        }
        let f = self.field;
        let mut acc = f.zero();
        for (c, m) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.factors() {
                for _ in 0..e {
                    t = f.mul(&t, &point[v as usize]);
                }
            }
            acc = f.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Variables occurring in the polynomial, ascending by index.
    pub fn variables(&self) -> Vec<VarIndex> {
        let mut vs: Vec<VarIndex> = self.terms.iter().flat_map(|(_, m)| m.support()).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.field;
        for (i, (c, m)) in self.terms.iter().enumerate() {
            let text = field.format(c);
            let (neg, mag) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono = self.ring.format_monomial(m);
            match (mag.as_str(), m.is_one()) {
                (_, true) => write!(f, "{mag}")?,
                ("1", false) => write!(f, "{mono}")?,
                _ => write!(f, "{mag}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// Operator forms panic on incompatible operands; the `try_*` methods report
// the mismatch instead.

impl<'a, F: Field> Add<&'a Polynomial<F>> for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
        self.try_add(rhs).expect("incompatible polynomials")
    }
}

impl<'a, F: Field> Sub<&'a Polynomial<F>> for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
        self.try_sub(rhs).expect("incompatible polynomials")
    }
}

impl<'a, F: Field> Mul<&'a Polynomial<F>> for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
        self.try_mul(rhs).expect("incompatible polynomials")
    }
}

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        let f = self.field;
        self.scale(&f.neg(&f.one()))
    }
}

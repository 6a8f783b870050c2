//! Mechanical checks of the steps in the primality and Gröbner-basis proofs:
//! the Laplace-type identities behind the S-polynomial reductions, the
//! table of initial terms for each case, the non-zerodivisor condition, and
//! the localization transform that lowers `l` by one.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{self, Grid};
use crate::ideals::{self, Instance, MinorSpec};
use crate::poly::{Field, Monomial, Polynomial, Rationals, Ring, VariableId};
use crate::report::{CheckItem, VerificationReport};

type Poly = Polynomial<Rationals>;

// ---------------------------------------------------------------------------
// Cases

/// The four S-polynomial cases. `Square` cases live in an `n x n` matrix,
/// `Wide` ones in an `n x (n+1)` matrix; `Below`/`Above` says whether row
/// `b` of the 2-minor lies below or above row `a` (for the square case with
/// `b <= a` the second row of the 2-minor is `a+1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Case {
    SquareBelow,
    SquareAbove,
    WideBelow,
    WideAbove,
}

impl Case {
    pub const ALL: [Case; 4] = [Case::SquareBelow, Case::SquareAbove, Case::WideBelow, Case::WideAbove];

    pub fn is_square(self) -> bool {
        matches!(self, Case::SquareBelow | Case::SquareAbove)
    }

    /// The summation index at which the summand equals `g_1 h`.
    fn special(self, a: usize) -> usize {
        match self {
            Case::SquareAbove => a + 1,
            _ => a,
        }
    }

    /// Whether `g_2` is multiplied by `p_{b,a+1}` (otherwise by `p_{b,a}`).
    fn multiplier_is_upper(self) -> bool {
        matches!(self, Case::SquareBelow | Case::WideBelow)
    }

}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::SquareBelow => "square b>a",
            Case::SquareAbove => "square b<=a",
            Case::WideBelow => "wide b>a",
            Case::WideAbove => "wide b<a",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CaseSpec {
    pub case: Case,
    pub n: usize,
    pub a: usize,
    pub b: usize,
}

impl CaseSpec {
    pub fn new(case: Case, n: usize, a: usize, b: usize) -> Result<Self> {
        let ok = n >= 2
            && match case {
                Case::SquareBelow => a >= 1 && a < n && b > a && b <= n,
                Case::SquareAbove => a >= 1 && a < n && b >= 1 && b <= a,
                Case::WideBelow => a >= 1 && b > a && b <= n,
                Case::WideAbove => a <= n && b >= 1 && b < a,
            };
        if !ok {
            return Err(Error::InvalidSize(format!("indices n={n}, a={a}, b={b} violate case {case}")));
        }
        Ok(CaseSpec { case, n, a, b })
    }

    /// Number of matrix columns.
    pub fn m(&self) -> usize {
        if self.case.is_square() {
            self.n
        } else {
            self.n + 1
        }
    }

    /// Every valid instance of every case for one `n`.
    pub fn all(n: usize) -> Vec<CaseSpec> {
        let mut out = Vec::new();
        for case in Case::ALL {
            for a in 1..=n {
                for b in 1..=n {
                    if let Ok(c) = CaseSpec::new(case, n, a, b) {
                        out.push(c);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for CaseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} n={} a={} b={}", self.case, self.n, self.a, self.b)
    }
}

// ---------------------------------------------------------------------------
// Symbolic pieces of the identities

fn without(n: usize, drop: &[usize]) -> Vec<usize> {
    (1..=n).filter(|x| !drop.contains(x)).collect()
}

fn det(ring: Ring, rows: Vec<usize>, cols: Vec<usize>) -> Result<Poly> {
    ideals::minor(ring, Rationals, &MinorSpec::new(rows, cols)?)
}

fn var(ring: Ring, r: usize, c: usize) -> Result<Poly> {
    Polynomial::var(ring, Rationals, VariableId::new(r, c))
}

fn signed(p: &Poly, positive: bool) -> Poly {
    if positive {
        p.clone()
    } else {
        -p
    }
}

/// The two sides of the identity for fixed `(n, a, b)`:
/// `lower - upper = sum_i s_i * summand_i`.
struct Identity {
    ring: Ring,
    /// `p_{b,a}` times the cofactor without column `a`.
    lower: Poly,
    /// `p_{b,a+1}` times the cofactor without column `a+1`.
    upper: Poly,
    /// `(i, [{i,b} | a,a+1] * cofactor)` for `i != b`.
    summands: Vec<(usize, Poly)>,
    /// Signs as printed: `(-1)^{a+i-1}`, except `(-1)^{a+i}` for `i > b` in
    /// the wide matrix.
    printed: Vec<bool>,
}

fn identity(square: bool, n: usize, a: usize, b: usize) -> Result<Identity> {
    let m = if square { n } else { n + 1 };
    if n < 2 || a == 0 || a + 1 > m || b == 0 || b > n {
        return Err(Error::InvalidSize(format!(
            "need 1 <= a < {m} and 1 <= b <= {n}, got a={a}, b={b}"
        )));
    }
    let ring = Ring::new(n, m);
    let lhs_rows = if square { without(n, &[b]) } else { without(n, &[]) };
    let lower = &var(ring, b, a)? * &det(ring, lhs_rows.clone(), without(m, &[a]))?;
    let upper = &var(ring, b, a + 1)? * &det(ring, lhs_rows, without(m, &[a + 1]))?;
    let mut summands = Vec::new();
    let mut printed = Vec::new();
    for i in (1..=n).filter(|&i| i != b) {
        let pair = det(ring, vec![i, b], vec![a, a + 1])?;
        let rows = if square { without(n, &[i, b]) } else { without(n, &[i]) };
        let cof = det(ring, rows, without(m, &[a, a + 1]))?;
        summands.push((i, &pair * &cof));
        let exp = a + i + 1 + usize::from(!square && i > b);
        printed.push(exp % 2 == 0);
    }
    Ok(Identity {
        ring,
        lower,
        upper,
        summands,
        printed,
    })
}

impl Identity {
    fn lhs(&self) -> Poly {
        &self.lower - &self.upper
    }

    fn rhs(&self, signs: &[bool]) -> Poly {
        let mut acc = Polynomial::zero(self.ring, Rationals);
        for ((_, q), &s) in self.summands.iter().zip(signs) {
            acc = &acc + &signed(q, s);
        }
        acc
    }

    /// Every sign vector making the identity hold.
    fn solve_signs(&self) -> Vec<Vec<bool>> {
        let k = self.summands.len();
        let lhs = self.lhs();
        (0u32..1 << k)
            .filter_map(|mask| {
                let signs: Vec<bool> = (0..k).map(|j| mask >> j & 1 == 0).collect();
                (self.rhs(&signs) == lhs).then_some(signs)
            })
            .collect()
    }
}

fn sign_list(indices: &[usize], signs: &[bool]) -> String {
    indices
        .iter()
        .zip(signs)
        .map(|(i, &s)| format!("i={i}:{}", if s { '+' } else { '-' }))
        .collect::<Vec<_>>()
        .join(" ")
}

fn verify_identity(square: bool, n: usize, a: usize, b: usize) -> Result<VerificationReport> {
    let name = if square { "square identity" } else { "wide identity" };
    let id = identity(square, n, a, b)?;
    let mut report = VerificationReport::new(format!("{name} n={n} a={a} b={b}"));
    let diff = &id.lhs() - &id.rhs(&id.printed);
    let witness = (!diff.is_zero()).then(|| {
        let shown: Vec<String> = diff
            .terms()
            .iter()
            .take(4)
            .map(|(c, m)| format!("{c}*{}", id.ring.format_monomial(m)))
            .collect();
        let idx: Vec<usize> = id.summands.iter().map(|(i, _)| *i).collect();
        let fixes = id.solve_signs();
        let fix = match fixes.first() {
            Some(s) => format!("corrected signs {}", sign_list(&idx, s)),
            None => "no choice of signs makes the identity hold".to_string(),
        };
        format!("lhs - rhs has {} terms, first {}; {fix}", diff.len(), shown.join(" + "))
    });
    let idx: Vec<usize> = id.summands.iter().map(|(i, _)| *i).collect();
    report.record(
        "identity with printed signs",
        diff.is_zero(),
        Some(sign_list(&idx, &id.printed)),
        witness,
    );
    Ok(report)
}

/// Expands both sides of `p_{b,a}[rows∖b | cols∖a] - p_{b,a+1}[rows∖b |
/// cols∖(a+1)] = sum_i ±[ib | a,a+1][rows∖{i,b} | cols∖{a,a+1}]` in an
/// `n x n` generic matrix and compares them. On failure the witness lists
/// the surviving terms and the signs that would make it hold.
pub fn verify_square_identity(n: usize, a: usize, b: usize) -> Result<VerificationReport> {
    verify_identity(true, n, a, b)
}

/// The same for an `n x (n+1)` matrix, where the cofactors drop only row `i`
/// and the whole row set is kept on the left.
pub fn verify_wide_identity(n: usize, a: usize, b: usize) -> Result<VerificationReport> {
    verify_identity(false, n, a, b)
}

// ---------------------------------------------------------------------------
// Initial-term tables

/// Index values a table formula is evaluated at.
#[derive(Debug, Clone, Copy)]
struct At {
    n: isize,
    a: isize,
    b: isize,
    i: isize,
}

/// A formula monomial as a list of cells; runs `p_{r,r+off}` for
/// `r = lo..=hi` are empty when `lo > hi`.
#[derive(Default)]
struct Cells(Vec<(isize, isize)>);

impl Cells {
    fn run(mut self, lo: isize, hi: isize, off: isize) -> Self {
        for r in lo..=hi {
            self.0.push((r, r + off));
        }
        self
    }

    fn p(mut self, r: isize, c: isize) -> Self {
        self.0.push((r, c));
        self
    }
}

fn cells() -> Cells {
    Cells::default()
}

/// Which product of the identity a row describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Part {
    /// `p_{b,a}` times its cofactor.
    Lower,
    /// `p_{b,a+1}` times its cofactor.
    Upper,
    /// Summands with `i < b`.
    Before,
    /// Summands with `i > b`.
    After,
    /// Second largest term of the summand equal to `g_1 h`.
    Second,
    /// Initial term of the S-polynomial.
    SPoly,
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Part::Lower => "p_{b,a} term",
            Part::Upper => "p_{b,a+1} term",
            Part::Before => "summand i<b",
            Part::After => "summand i>b",
            Part::Second => "second term of g1*h",
            Part::SPoly => "S-polynomial",
        })
    }
}

type Cond = fn(&At) -> bool;
type Formula = fn(&At) -> Cells;

struct TableRow {
    case: Case,
    part: Part,
    branch: &'static str,
    when: Cond,
    formula: Formula,
    /// `1`: from `in(h) g_1`; `2`: from the multiple of `g_2`.
    tag: Option<u8>,
}

impl TableRow {
    fn id(&self) -> String {
        if self.branch.is_empty() {
            format!("{} | {}", self.case, self.part)
        } else {
            format!("{} | {} | {}", self.case, self.part, self.branch)
        }
    }
}

fn always(_: &At) -> bool {
    true
}

fn row(case: Case, part: Part, branch: &'static str, when: Cond, formula: Formula, tag: Option<u8>) -> TableRow {
    TableRow {
        case,
        part,
        branch,
        when,
        formula,
        tag,
    }
}

/// The initial-term tables, transcribed row by row. Branch conditions on
/// `i` select summands; all others select `(a, b)`.
fn table() -> Vec<TableRow> {
    use Case::*;
    use Part::*;
    let mut t = vec![
        // n x n, b > a.
        row(SquareBelow, Lower, "", always, |x| {
            cells().run(1, x.a - 1, 0).run(x.a, x.b - 1, 1).p(x.b, x.a).run(x.b + 1, x.n, 0)
        }, None),
        row(SquareBelow, Upper, "", always, |x| {
            cells().run(1, x.a, 0).run(x.a + 1, x.b - 1, 1).p(x.b, x.a + 1).run(x.b + 1, x.n, 0)
        }, None),
        row(SquareBelow, Before, "i<a", |x| x.i < x.a, |x| {
            cells()
                .run(1, x.i - 1, 0)
                .p(x.i, x.a)
                .run(x.i + 1, x.a, -1)
                .run(x.a + 1, x.b - 1, 1)
                .p(x.b, x.a + 1)
                .run(x.b + 1, x.n, 0)
        }, None),
        row(SquareBelow, Before, "i=a", |x| x.i == x.a, |x| {
            cells().run(1, x.a, 0).run(x.a + 1, x.b - 1, 1).p(x.b, x.a + 1).run(x.b + 1, x.n, 0)
        }, None),
        row(SquareBelow, After, "i>b", |x| x.i > x.b, |x| {
            cells()
                .run(1, x.a - 1, 0)
                .run(x.a, x.b - 1, 2)
                .p(x.b, x.a)
                .run(x.b + 1, x.i - 1, 1)
                .p(x.i, x.a + 1)
                .run(x.i + 1, x.n, 0)
        }, None),
        // n x n, b <= a.
        row(SquareAbove, Lower, "", always, |x| {
            cells().run(1, x.b - 1, 0).p(x.b, x.a).run(x.b + 1, x.a, -1).run(x.a + 1, x.n, 0)
        }, None),
        row(SquareAbove, Upper, "", always, |x| {
            cells().run(1, x.b - 1, 0).p(x.b, x.a + 1).run(x.b + 1, x.a + 1, -1).run(x.a + 2, x.n, 0)
        }, None),
        row(SquareAbove, Before, "i<b", |x| x.i < x.b, |x| {
            cells()
                .run(1, x.i - 1, 0)
                .p(x.i, x.a)
                .run(x.i + 1, x.b - 1, -1)
                .p(x.b, x.a + 1)
                .run(x.b + 1, x.a + 1, -2)
                .run(x.a + 2, x.n, 0)
        }, None),
        row(SquareAbove, After, "b<i<=a", |x| x.b < x.i && x.i <= x.a, |x| {
            cells()
                .run(1, x.b - 1, 0)
                .p(x.b, x.a)
                .run(x.b + 1, x.i - 1, -1)
                .p(x.i, x.a + 1)
                .run(x.i + 1, x.a + 1, -2)
                .run(x.a + 2, x.n, 0)
        }, None),
        row(SquareAbove, After, "i=a+1", |x| x.i == x.a + 1, |x| {
            cells().run(1, x.b - 1, 0).p(x.b, x.a).run(x.b + 1, x.a, -1).p(x.a + 1, x.a + 1).run(x.a + 2, x.n, 0)
        }, None),
        row(SquareAbove, Second, "a<n-2", |x| x.a < x.n - 2, |x| {
            cells()
                .run(1, x.b - 1, 0)
                .p(x.b, x.a)
                .run(x.b + 1, x.a, -1)
                .run(x.a + 1, x.n - 2, 0)
                .p(x.n - 1, x.n)
                .p(x.n, x.n - 1)
        }, None),
        row(SquareAbove, Second, "a=n-2, b<n-2", |x| x.a == x.n - 2 && x.b < x.n - 2, |x| {
            cells()
                .run(1, x.b - 1, 0)
                .p(x.b, x.n - 2)
                .run(x.b + 1, x.n - 3, -1)
                .p(x.n - 2, x.n)
                .p(x.n - 1, x.n - 1)
                .p(x.n, x.n - 3)
        }, None),
        row(SquareAbove, Second, "a=n-2, b=n-2", |x| x.a == x.n - 2 && x.b == x.n - 2, |x| {
            cells().run(1, x.n - 3, 0).p(x.n - 2, x.n - 1).p(x.n - 1, x.n - 2).p(x.n, x.n)
        }, None),
        row(SquareAbove, Second, "a=n-1, b<n-2", |x| x.a == x.n - 1 && x.b < x.n - 2, |x| {
            cells()
                .run(1, x.b - 1, 0)
                .p(x.b, x.n - 1)
                .run(x.b + 1, x.n - 3, -1)
                .p(x.n - 2, x.n - 2)
                .p(x.n - 1, x.n - 3)
                .p(x.n, x.n)
        }, None),
        row(SquareAbove, Second, "a=n-1, b=n-2", |x| x.a == x.n - 1 && x.b == x.n - 2, |x| {
            cells().run(1, x.n - 3, 0).p(x.n - 2, x.n).p(x.n - 1, x.n - 2).p(x.n, x.n - 1)
        }, None),
        row(SquareAbove, Second, "a=n-1, b=n-1", |x| x.a == x.n - 1 && x.b == x.n - 1, |x| {
            cells().run(1, x.n - 2, 0).p(x.n - 1, x.n).p(x.n, x.n - 1)
        }, None),
        // Printed without a condition; the formula is the a<n-2 branch above
        // and has the wrong degree for a = n-1.
        row(SquareAbove, SPoly, "a<n-2", |x| x.a < x.n - 2, |x| {
            cells()
                .run(1, x.b - 1, 0)
                .p(x.b, x.a)
                .run(x.b + 1, x.a, -1)
                .run(x.a + 1, x.n - 2, 0)
                .p(x.n - 1, x.n)
                .p(x.n, x.n - 1)
        }, None),
        // n x (n+1), b > a.
        row(WideBelow, Lower, "", always, |x| {
            cells().run(1, x.a - 1, 0).run(x.a, x.b - 1, 1).p(x.b, x.a).run(x.b, x.n, 1)
        }, None),
        row(WideBelow, Upper, "", always, |x| {
            cells().run(1, x.a, 0).run(x.a + 1, x.b - 1, 1).p(x.b, x.a + 1).run(x.b, x.n, 1)
        }, None),
        row(WideBelow, Before, "i<a", |x| x.i < x.a, |x| {
            cells()
                .run(1, x.i - 1, 0)
                .p(x.i, x.a)
                .run(x.i + 1, x.a, -1)
                .run(x.a + 1, x.b - 1, 1)
                .p(x.b, x.a + 1)
                .run(x.b, x.n, 1)
        }, None),
        row(WideBelow, Before, "i=a", |x| x.i == x.a, |x| {
            cells().run(1, x.a, 0).run(x.a + 1, x.b - 1, 1).p(x.b, x.a + 1).run(x.b, x.n, 1)
        }, None),
        row(WideBelow, Before, "a<i<b", |x| x.a < x.i && x.i < x.b, |x| {
            cells()
                .run(1, x.a - 1, 0)
                .run(x.a, x.i - 1, 2)
                .p(x.i, x.a)
                .run(x.i + 1, x.b - 1, 1)
                .p(x.b, x.a + 1)
                .run(x.b, x.n, 1)
        }, None),
        row(WideBelow, After, "i>b", |x| x.i > x.b, |x| {
            cells()
                .run(1, x.a - 1, 0)
                .run(x.a, x.b - 1, 2)
                .p(x.b, x.a)
                .run(x.b, x.i - 1, 2)
                .p(x.i, x.a + 1)
                .run(x.i + 1, x.n, 1)
        }, None),
        row(WideBelow, Second, "b=n, a<n-2", |x| x.b == x.n && x.a < x.n - 2, |x| {
            cells().run(1, x.a, 0).run(x.a + 1, x.n - 2, 1).p(x.n - 1, x.n + 1).p(x.n, x.a + 1).p(x.n, x.n)
        }, None),
        row(WideBelow, Second, "b=n, a=n-2", |x| x.b == x.n && x.a == x.n - 2, |x| {
            cells().run(1, x.n - 2, 0).p(x.n - 1, x.n + 1).p(x.n, x.n - 1).p(x.n, x.n)
        }, None),
        row(WideBelow, SPoly, "b=n, a<n-1", |x| x.b == x.n && x.a < x.n - 1, |x| {
            cells().run(1, x.a, 0).run(x.a + 1, x.n - 2, 1).p(x.n - 1, x.n + 1).p(x.n, x.a + 1).p(x.n, x.n)
        }, Some(2)),
        // n x (n+1), b < a.
        row(WideAbove, Lower, "", always, |x| {
            cells().run(1, x.b, 0).p(x.b, x.a).run(x.b + 1, x.a - 1, 0).run(x.a, x.n, 1)
        }, None),
        row(WideAbove, Upper, "", always, |x| {
            cells().run(1, x.b, 0).p(x.b, x.a + 1).run(x.b + 1, x.a, 0).run(x.a + 1, x.n, 1)
        }, None),
        row(WideAbove, Before, "i<b", |x| x.i < x.b, |x| {
            cells()
                .run(1, x.i - 1, 0)
                .p(x.i, x.a)
                .run(x.i + 1, x.b, -1)
                .p(x.b, x.a + 1)
                .run(x.b + 1, x.a, -1)
                .run(x.a + 1, x.n, 1)
        }, None),
        row(WideAbove, After, "b<i<a", |x| x.b < x.i && x.i < x.a, |x| {
            cells()
                .run(1, x.b, 0)
                .p(x.b, x.a)
                .run(x.b + 1, x.i - 1, 0)
                .p(x.i, x.a + 1)
                .run(x.i + 1, x.a, -1)
                .run(x.a + 1, x.n, 1)
        }, None),
        row(WideAbove, After, "i=a", |x| x.i == x.a, |x| {
            cells().run(1, x.b, 0).p(x.b, x.a).run(x.b + 1, x.a - 1, 0).run(x.a, x.n, 1)
        }, None),
        row(WideAbove, After, "i>a", |x| x.i > x.a, |x| {
            cells()
                .run(1, x.b, 0)
                .p(x.b, x.a)
                .run(x.b + 1, x.a - 1, 0)
                .run(x.a, x.i - 1, 2)
                .p(x.i, x.a + 1)
                .run(x.i + 1, x.n, 1)
        }, None),
        row(WideAbove, Second, "a<n-1", |x| x.a < x.n - 1, |x| {
            cells()
                .run(1, x.b, 0)
                .p(x.b, x.a)
                .run(x.b + 1, x.a - 1, 0)
                .run(x.a, x.n - 2, 1)
                .p(x.n - 1, x.n + 1)
                .p(x.n, x.n)
        }, None),
        row(WideAbove, Second, "a=n-1, b<n-2", |x| x.a == x.n - 1 && x.b < x.n - 2, |x| {
            cells()
                .run(1, x.b, 0)
                .p(x.b, x.n - 1)
                .run(x.b + 1, x.n - 3, 0)
                .p(x.n - 2, x.n + 1)
                .p(x.n - 1, x.n)
                .p(x.n, x.n - 2)
        }, None),
        row(WideAbove, Second, "a=n-1, b=n-2", |x| x.a == x.n - 1 && x.b == x.n - 2, |x| {
            cells().run(1, x.n - 2, 0).p(x.n - 2, x.n).p(x.n - 1, x.n - 1).p(x.n, x.n + 1)
        }, None),
        row(WideAbove, Second, "a=n, b<n-2", |x| x.a == x.n && x.b < x.n - 2, |x| {
            cells()
                .run(1, x.b, 0)
                .p(x.b, x.n)
                .run(x.b + 1, x.n - 3, 0)
                .p(x.n - 2, x.n - 1)
                .p(x.n - 1, x.n - 2)
                .p(x.n, x.n + 1)
        }, None),
        row(WideAbove, Second, "a=n, b=n-2", |x| x.a == x.n && x.b == x.n - 2, |x| {
            cells().run(1, x.n - 2, 0).p(x.n - 2, x.n + 1).p(x.n - 1, x.n - 1).p(x.n, x.n)
        }, None),
        row(WideAbove, Second, "a=n, b=n-1", |x| x.a == x.n && x.b == x.n - 1, |x| {
            cells().run(1, x.n - 1, 0).p(x.n - 1, x.n + 1).p(x.n, x.n)
        }, None),
        row(WideAbove, SPoly, "a<n-1", |x| x.a < x.n - 1, |x| {
            cells()
                .run(1, x.b, 0)
                .p(x.b, x.a)
                .run(x.b + 1, x.a - 1, 0)
                .run(x.a, x.n - 2, 1)
                .p(x.n - 1, x.n + 1)
                .p(x.n, x.n)
        }, Some(2)),
        row(WideAbove, SPoly, "a=n-1, b<n-2", |x| x.a == x.n - 1 && x.b < x.n - 2, |x| {
            cells().run(1, x.b, 0).p(x.b, x.n - 1).run(x.b + 1, x.n - 2, 0).p(x.n - 1, x.n + 1).p(x.n, x.n)
        }, Some(2)),
        row(WideAbove, SPoly, "a=n-1, b=n-2", |x| x.a == x.n - 1 && x.b == x.n - 2, |x| {
            cells().run(1, x.n - 2, 0).p(x.n - 2, x.n - 1).p(x.n - 1, x.n + 1).p(x.n, x.n)
        }, Some(2)),
        row(WideAbove, SPoly, "a=n, b<n-1", |x| x.a == x.n && x.b < x.n - 1, |x| {
            cells().run(1, x.b, 0).p(x.b, x.n).run(x.b + 1, x.n - 2, 0).p(x.n - 1, x.n + 1).p(x.n, x.n - 1)
        }, Some(2)),
        row(WideAbove, SPoly, "a=n, b=n-1", |x| x.a == x.n && x.b == x.n - 1, |x| {
            cells().run(1, x.n - 1, 0).p(x.n - 1, x.n + 1).p(x.n, x.n)
        }, Some(1)),
    ];
    // Branches listed identically for the second term and the S-polynomial.
    type Shared = (&'static str, Cond, Formula, u8);
    let square_below: [Shared; 6] = [
        ("b<n-1", |x| x.b < x.n - 1, |x| {
            cells()
                .run(1, x.a, 0)
                .run(x.a + 1, x.b - 1, 1)
                .p(x.b, x.a + 1)
                .run(x.b + 1, x.n - 2, 0)
                .p(x.n - 1, x.n)
                .p(x.n, x.n - 1)
        }, 2),
        ("b=n-1, a<n-2", |x| x.b == x.n - 1 && x.a < x.n - 2, |x| {
            cells().run(1, x.a, 0).run(x.a + 1, x.n - 3, 1).p(x.n - 2, x.n).p(x.n - 1, x.a + 1).p(x.n, x.n - 1)
        }, 2),
        ("b=n-1, a=n-2", |x| x.b == x.n - 1 && x.a == x.n - 2, |x| {
            cells().run(1, x.n - 3, 0).p(x.n - 2, x.n - 1).p(x.n - 1, x.n - 2).p(x.n, x.n)
        }, 1),
        ("b=n, a<n-2", |x| x.b == x.n && x.a < x.n - 2, |x| {
            cells().run(1, x.a, 0).run(x.a + 1, x.n - 3, 1).p(x.n - 2, x.n).p(x.n - 1, x.n - 1).p(x.n, x.a + 1)
        }, 2),
        ("b=n, a=n-2", |x| x.b == x.n && x.a == x.n - 2, |x| {
            cells().run(1, x.n - 3, 0).p(x.n - 2, x.n - 1).p(x.n - 1, x.n).p(x.n, x.n - 2)
        }, 1),
        ("b=n, a=n-1", |x| x.b == x.n && x.a == x.n - 1, |x| {
            cells().run(1, x.n - 2, 0).p(x.n - 1, x.n).p(x.n, x.n - 1)
        }, 1),
    ];
    let wide_below: [Shared; 4] = [
        ("b<n-1", |x| x.b < x.n - 1, |x| {
            cells()
                .run(1, x.a, 0)
                .run(x.a + 1, x.b - 1, 1)
                .p(x.b, x.a + 1)
                .run(x.b, x.n - 2, 1)
                .p(x.n - 1, x.n + 1)
                .p(x.n, x.n)
        }, 2),
        ("b=n-1, a<n-2", |x| x.b == x.n - 1 && x.a < x.n - 2, |x| {
            cells().run(1, x.a, 0).run(x.a + 1, x.n - 2, 1).p(x.n - 1, x.a + 1).p(x.n - 1, x.n + 1).p(x.n, x.n)
        }, 2),
        ("b=n-1, a=n-2", |x| x.b == x.n - 1 && x.a == x.n - 2, |x| {
            cells().run(1, x.n - 2, 0).p(x.n - 1, x.n - 1).p(x.n - 1, x.n + 1).p(x.n, x.n)
        }, 2),
        ("b=n, a=n-1", |x| x.b == x.n && x.a == x.n - 1, |x| {
            cells().run(1, x.n - 2, 0).p(x.n - 1, x.n).p(x.n, x.n - 1).p(x.n, x.n + 1)
        }, 1),
    ];
    for (case, shared) in [(Case::SquareBelow, &square_below[..]), (Case::WideBelow, &wide_below[..])] {
        for &(branch, when, formula, tag) in shared {
            t.push(row(case, Second, branch, when, formula, None));
            t.push(row(case, SPoly, branch, when, formula, Some(tag)));
        }
    }
    t
}

/// Identifiers of every table row, for coverage accounting.
pub fn table_row_ids() -> Vec<String> {
    let mut ids: Vec<String> = table().iter().map(TableRow::id).collect();
    ids.sort();
    ids
}

fn formula_monomial(ring: &Ring, cells: &Cells) -> Option<Monomial> {
    let mut vars = Vec::with_capacity(cells.0.len());
    for &(r, c) in &cells.0 {
        if r < 1 || c < 1 {
            return None;
        }
        vars.push(ring.index(VariableId::new(r as usize, c as usize)).ok()?);
    }
    Some(Monomial::from_vars(vars))
}

/// Which of `in(h) g_1` (1) and the multiple of `g_2` (2) contains `m`;
/// `None` if both or neither do.
fn provenance(m: &Monomial, first: &Poly, second: &Poly) -> Option<u8> {
    let has = |p: &Poly| p.terms().iter().any(|(_, t)| t == m);
    match (has(first), has(second)) {
        (true, false) => Some(1),
        (false, true) => Some(2),
        _ => None,
    }
}

fn leading(p: &Poly) -> Option<Monomial> {
    p.leading_monomial().cloned()
}

/// Checks one case instance: each applicable table row against the true
/// initial term of its product, the provenance tag of `in(S)`, and the
/// rearranged identity as a standard representation of `S(g_1, g_2)`,
/// i.e. every remaining piece has initial term at most `in(S)`.
pub fn verify_table(spec: &CaseSpec) -> Result<VerificationReport> {
    let spec = CaseSpec::new(spec.case, spec.n, spec.a, spec.b)?;
    let CaseSpec { case, n, a, b } = spec;
    let m = spec.m();
    let id = identity(case.is_square(), n, a, b)?;
    let ring = id.ring;
    let sp = case.special(a);
    let mut report = VerificationReport::new(format!("initial terms {spec}"));

    // g_1, g_2, h and the S-polynomial in the stated form.
    let (g1_rows, mult_col, g2_col) = match case {
        Case::SquareBelow | Case::WideBelow => (vec![a, b], a + 1, a + 1),
        Case::SquareAbove => (vec![b, a + 1], a, a),
        Case::WideAbove => (vec![b, a], a, a),
    };
    let g1 = det(ring, g1_rows, vec![a, a + 1])?;
    let g2_rows = if case.is_square() { without(n, &[b]) } else { without(n, &[]) };
    let g2 = det(ring, g2_rows, without(m, &[g2_col]))?;
    let h_rows = match case {
        Case::SquareBelow => without(n, &[a, b]),
        Case::SquareAbove => without(n, &[b, a + 1]),
        Case::WideBelow | Case::WideAbove => without(n, &[a]),
    };
    let h = det(ring, h_rows, without(m, &[a, a + 1]))?;
    let in_h = Polynomial::term(ring, Rationals, Rationals.one(), leading(&h).expect("minor is nonzero"));
    let first = &in_h * &g1;
    let second = &var(ring, b, mult_col)? * &g2;
    let s = &first - &second;
    let lm = |p: &Poly| leading(p).expect("nonzero product");
    report.record(
        "leading terms of in(h)*g1 and the g2 multiple cancel",
        lm(&first) == lm(&second),
        None,
        Some(format!("{} vs {}", ring.format_monomial(&lm(&first)), ring.format_monomial(&lm(&second)))),
    );
    let lcm = lm(&g1).lcm(&lm(&g2));
    report.record(
        "in(h)*in(g1) is the lcm of in(g1) and in(g2)",
        lm(&first) == lcm,
        None,
        Some(format!("lcm {}", ring.format_monomial(&lcm))),
    );
    let in_s = match leading(&s) {
        Some(t) => t,
        None => {
            report.record("S-polynomial is nonzero", false, None, Some("S = 0".into()));
            return Ok(report);
        }
    };
    let tag = provenance(&in_s, &first, &second);

    // Identity signs: the printed ones when they hold, else the oracle's.
    let signs = if id.rhs(&id.printed) == id.lhs() {
        id.printed.clone()
    } else {
        let fixes = id.solve_signs();
        report.record("identity holds with printed signs", false, None, Some("signs re-derived".into()));
        match fixes.into_iter().next() {
            Some(s) => s,
            None => return Ok(report),
        }
    };

    // Rearranged identity: S minus a multiple of (lhs - rhs).
    let upper_is_mult = case.multiplier_is_upper();
    let mut pieces: Vec<(String, Poly)> = Vec::new();
    let flip = !upper_is_mult;
    if upper_is_mult {
        pieces.push(("p_{b,a} term".into(), -&id.lower));
    } else {
        pieces.push(("p_{b,a+1} term".into(), -&id.upper));
    }
    let mut special = first.clone();
    for ((i, q), &sgn) in id.summands.iter().zip(&signs) {
        let term = signed(q, sgn != flip);
        if *i == sp {
            special = &special + &term;
        } else {
            pieces.push((format!("summand i={i}"), term));
        }
    }
    pieces.push(("g1*(h - in(h))".into(), special));
    let mut total = Polynomial::zero(ring, Rationals);
    for (_, p) in &pieces {
        total = &total + p;
    }
    report.record("rearranged identity sums to S", total == s, None, Some("sum differs from S".into()));
    for (name, p) in &pieces {
        if let Some(t) = leading(p) {
            report.record(
                format!("{name} has initial term <= in(S)"),
                t <= in_s,
                None,
                Some(format!("{} > {}", ring.format_monomial(&t), ring.format_monomial(&in_s))),
            );
        }
    }

    // Table rows.
    let summand = |i: usize| &id.summands.iter().find(|(j, _)| *j == i).expect("i != b").1;
    let base = At {
        n: n as isize,
        a: a as isize,
        b: b as isize,
        i: 0,
    };
    for r in table().iter().filter(|r| r.case == case) {
        let targets: Vec<(Option<usize>, Monomial)> = match r.part {
            Part::Lower => vec![(None, lm(&id.lower))],
            Part::Upper => vec![(None, lm(&id.upper))],
            Part::Before | Part::After => id
                .summands
                .iter()
                .filter(|(i, _)| (r.part == Part::Before) == (*i < b))
                .filter(|(i, _)| (r.when)(&At { i: *i as isize, ..base }))
                .map(|(i, q)| (Some(*i), lm(q)))
                .collect(),
            Part::Second => {
                if !(r.when)(&base) {
                    continue;
                }
                match summand(sp).terms().get(1) {
                    Some((_, t)) => vec![(Some(sp), t.clone())],
                    None => continue,
                }
            }
            Part::SPoly => {
                if !(r.when)(&base) {
                    continue;
                }
                vec![(None, in_s.clone())]
            }
        };
        for (i, truth) in targets {
            let at = At {
                i: i.map_or(0, |i| i as isize),
                ..base
            };
            let expected = formula_monomial(&ring, &(r.formula)(&at));
            let mut ok = expected.as_ref() == Some(&truth);
            let mut witness = format!(
                "computed {}, table {}",
                ring.format_monomial(&truth),
                expected.as_ref().map_or("outside the matrix".into(), |e| ring.format_monomial(e))
            );
            if r.part == Part::SPoly {
                if let Some(want) = r.tag {
                    if tag != Some(want) {
                        ok = false;
                        witness = format!("{witness}; tag computed {tag:?}, table ({want})");
                    }
                }
            }
            report.push(CheckItem {
                name: match i {
                    Some(i) => format!("{} at i={i}", r.part),
                    None => r.part.to_string(),
                },
                passed: ok,
                row: Some(r.id()),
                detail: Some(format!(
                    "{}{}",
                    ring.format_monomial(&truth),
                    if r.part == Part::SPoly { format!(" tag {tag:?}") } else { String::new() }
                )),
                witness: (!ok).then_some(witness),
            });
        }
    }
    Ok(report)
}

/// Runs [`verify_table`] for every case instance with the given matrix
/// sizes and adds one coverage item per table row.
pub fn verify_tables(ns: &[usize]) -> Result<VerificationReport> {
    let specs: Vec<CaseSpec> = ns.iter().flat_map(|&n| CaseSpec::all(n)).collect();
    let reports = specs.par_iter().map(verify_table).collect::<Result<Vec<_>>>()?;
    let mut out = VerificationReport::new(format!("initial-term tables, n in {ns:?}"));
    let mut hit = BTreeSet::new();
    for r in reports {
        for item in &r.items {
            if let Some(id) = &item.row {
                hit.insert(id.clone());
            }
        }
        out.absorb(r);
    }
    for id in table_row_ids() {
        let covered = hit.contains(&id);
        out.record(format!("coverage {id}"), covered, None, Some("row never applies".into()));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Non-zerodivisors and localization

fn main_regime(grid: &Grid, d: usize) -> Result<()> {
    Instance::main(grid.k, grid.l, d)?.require_main_regime()
}

/// Minors of `gens` whose leading term is divisible by `p_{row,col}`.
fn divisible_by(gens: &[MinorSpec], row: usize, col: usize) -> Vec<&MinorSpec> {
    gens.iter()
        .filter(|g| g.rows().iter().zip(g.cols()).any(|(&r, &c)| r == row && c == col))
        .collect()
}

/// Checks that `p_{d,(j-1)k+1}` divides no leading term of `G(I_0)`. Since
/// `G(I_0)` is a Gröbner basis this makes the variable a non-zerodivisor.
pub fn check_nzd(grid: &Grid, d: usize, j: usize) -> Result<VerificationReport> {
    main_regime(grid, d)?;
    if j == 0 || j >= grid.l {
        return Err(Error::Regime(format!("non-zerodivisor check needs 1 <= j <= {}, got {j}", grid.l - 1)));
    }
    let col = (j - 1) * grid.k + 1;
    let gens = ideals::i0_minors(grid, d, grid.l)?;
    let bad = divisible_by(&gens, d, col);
    let mut report = VerificationReport::new(format!("non-zerodivisor p_{{{d},{col}}}"));
    report.record(
        format!("p_{{{d},{col}}} divides no leading term of {} generators", gens.len()),
        bad.is_empty(),
        None,
        bad.first().map(|g| g.to_string()),
    );
    Ok(report)
}

/// Localizes an ideal generated by minors at the minor `[rows | cols]`.
/// Keeps the generators avoiding `cols`; for a generator `[A|B]` meeting
/// `cols` in `r` places adds `[α | B∖cols]` for every `α ⊆ A ∪ rows` of size
/// `|A| - r`. Generators of size at least 2 that use a column whose `d`
/// variables are all present are then dropped as redundant.
pub fn localize(gens: &[MinorSpec], d: usize, rows: &[usize], cols: &[usize]) -> Result<Vec<MinorSpec>> {
    if rows.len() != cols.len() {
        return Err(Error::InvalidSize("localizing minor needs as many rows as columns".into()));
    }
    let present: HashSet<&MinorSpec> = gens.iter().collect();
    for g in gens {
        let pool: BTreeSet<usize> = g.rows().iter().chain(rows).copied().collect();
        let pool: Vec<usize> = pool.into_iter().collect();
        for alpha in grid::subsets(&pool, g.size()) {
            let need = MinorSpec::new(alpha, g.cols().to_vec())?;
            if !present.contains(&need) {
                return Err(Error::Hypothesis(format!(
                    "{g} is in the generating set but {need} is not"
                )));
            }
        }
    }
    let mut out = Vec::new();
    for g in gens {
        let kept: Vec<usize> = g.cols().iter().copied().filter(|c| !cols.contains(c)).collect();
        let r = g.size() - kept.len();
        if r == 0 {
            out.push(g.clone());
            continue;
        }
        if kept.is_empty() {
            return Err(Error::Hypothesis(format!("{g} becomes a unit after localizing")));
        }
        let pool: BTreeSet<usize> = g.rows().iter().chain(rows).copied().collect();
        let pool: Vec<usize> = pool.into_iter().collect();
        for alpha in grid::subsets(&pool, kept.len()) {
            out.push(MinorSpec::new(alpha, kept.clone())?);
        }
    }
    let vars: HashSet<(usize, usize)> =
        out.iter().filter(|g| g.size() == 1).map(|g| (g.rows()[0], g.cols()[0])).collect();
    let full = |c: usize| (1..=d).all(|x| vars.contains(&(x, c)));
    out.retain(|g| g.size() == 1 || !g.cols().iter().any(|&c| full(c)));
    ideals::canonicalize(&mut out);
    Ok(out)
}

/// The generators the localization of `G(I_0)` at `p_{d,1}` should produce:
/// the variables of columns `2..=k`, the 2-minors inside each grid column
/// `C_j` with `j >= 2`, and the `(l-1)`-minors taking one column from each
/// of `C_2, ..., C_l`. Built independently of [`ideals::i0_minors`].
pub fn expected_localization(grid: &Grid, d: usize) -> Result<Vec<MinorSpec>> {
    let rows: Vec<usize> = (1..=d).collect();
    let mut out = Vec::new();
    for c in 2..=grid.k {
        for x in 1..=d {
            out.push(MinorSpec::new(vec![x], vec![c])?);
        }
    }
    for j in 2..=grid.l {
        for b in grid::subsets(&grid.col(j), 2) {
            for a in grid::subsets(&rows, 2) {
                out.push(MinorSpec::new(a, b.clone())?);
            }
        }
    }
    let rest: Vec<usize> = (grid.k + 1..=grid.size()).collect();
    let t = grid.l - 1;
    if t <= d {
        for b in grid::subsets(&rest, t) {
            let mut seen = HashSet::new();
            if b.iter().all(|&y| seen.insert(grid.grid_col_of(y))) {
                for a in grid::subsets(&rows, t) {
                    out.push(MinorSpec::new(a, b.clone())?);
                }
            }
        }
    }
    ideals::canonicalize(&mut out);
    Ok(out)
}

fn minor_list(ms: &[MinorSpec], limit: usize) -> String {
    let shown: Vec<String> = ms.iter().take(limit).map(MinorSpec::to_string).collect();
    let more = if ms.len() > limit { format!(" and {} more", ms.len() - limit) } else { String::new() };
    format!("{}{more}", shown.join(", "))
}

fn compare_sets(report: &mut VerificationReport, name: &str, got: &[MinorSpec], want: &[MinorSpec]) {
    let got_set: BTreeSet<&MinorSpec> = got.iter().collect();
    let want_set: BTreeSet<&MinorSpec> = want.iter().collect();
    let extra: Vec<MinorSpec> = got_set.difference(&want_set).map(|m| (*m).clone()).collect();
    let missing: Vec<MinorSpec> = want_set.difference(&got_set).map(|m| (*m).clone()).collect();
    report.record(
        name,
        extra.is_empty() && missing.is_empty(),
        Some(format!("{} generators", got.len())),
        Some(format!("unexpected [{}]; missing [{}]", minor_list(&extra, 5), minor_list(&missing, 5))),
    );
}

/// One step of the induction on `l`: localize `G(I_0)` at `p_{d,1}`, compare
/// with [`expected_localization`], split off the variable block, shift the
/// remaining columns down by `k` and compare with `G(I_0)` for `l - 1` and
/// minor size `l - 1`. Needs `l >= 3`.
pub fn verify_localization_step(grid: &Grid, d: usize) -> Result<VerificationReport> {
    if grid.k < 2 || grid.l < 3 || d < grid.l {
        return Err(Error::Regime(format!(
            "localization step needs k >= 2, l >= 3, d >= l; got k={}, l={}, d={d}",
            grid.k, grid.l
        )));
    }
    let mut report = VerificationReport::new(format!("localization k={} l={} d={d}", grid.k, grid.l));
    let gens = ideals::i0_minors(grid, d, grid.l)?;
    let bad = divisible_by(&gens, d, 1);
    report.record(
        format!("p_{{{d},1}} divides no leading term"),
        bad.is_empty(),
        None,
        bad.first().map(|g| g.to_string()),
    );
    let local = localize(&gens, d, &[d], &[1])?;
    compare_sets(&mut report, "localized generators", &local, &expected_localization(grid, d)?);
    let (vars, rest): (Vec<MinorSpec>, Vec<MinorSpec>) = local.into_iter().partition(|g| g.size() == 1);
    let block_ok = vars.len() == d * (grid.k - 1) && vars.iter().all(|g| (2..=grid.k).contains(&g.cols()[0]));
    report.record(
        "variables are exactly the block of columns 2..k",
        block_ok,
        Some(format!("{} variables", vars.len())),
        Some(minor_list(&vars, 5)),
    );
    let shifted = rest
        .iter()
        .map(|g| {
            if g.cols().iter().any(|&c| c <= grid.k) {
                return Err(Error::Hypothesis(format!("{g} still uses the first grid column")));
            }
            MinorSpec::new(g.rows().to_vec(), g.cols().iter().map(|c| c - grid.k).collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    let smaller = Grid::new(grid.k, grid.l - 1)?;
    compare_sets(&mut report, "shifted remainder equals G(I_0) one level down", &shifted, &ideals::i0_minors(&smaller, d, grid.l - 1)?);
    Ok(report)
}

/// The base of the induction at `l = 2`: `G(I_0)` is the set of all
/// 2-minors, and localizing at `p_{d,1}` leaves exactly the variables of
/// columns `2..=2k`, a prime monomial ideal.
pub fn verify_base_case(k: usize, d: usize) -> Result<VerificationReport> {
    if k < 2 || d < 2 {
        return Err(Error::Regime(format!("base case needs k >= 2 and d >= 2; got k={k}, d={d}")));
    }
    let grid = Grid::new(k, 2)?;
    let mut report = VerificationReport::new(format!("base case k={k} l=2 d={d}"));
    let gens = ideals::i0_minors(&grid, d, 2)?;
    let rows: Vec<usize> = (1..=d).collect();
    let cols: Vec<usize> = (1..=grid.size()).collect();
    let mut all2 = Vec::new();
    for b in grid::subsets(&cols, 2) {
        for a in grid::subsets(&rows, 2) {
            all2.push(MinorSpec::new(a, b.clone())?);
        }
    }
    ideals::canonicalize(&mut all2);
    compare_sets(&mut report, "G(I_0) is every 2-minor", &gens, &all2);
    let bad = divisible_by(&gens, d, 1);
    report.record(
        format!("p_{{{d},1}} divides no leading term"),
        bad.is_empty(),
        None,
        bad.first().map(|g| g.to_string()),
    );
    let local = localize(&gens, d, &[d], &[1])?;
    let mut want = Vec::new();
    for c in 2..=grid.size() {
        for x in 1..=d {
            want.push(MinorSpec::new(vec![x], vec![c])?);
        }
    }
    ideals::canonicalize(&mut want);
    compare_sets(&mut report, "localization is generated by variables", &local, &want);
    Ok(report)
}

/// The whole induction for one instance of the main regime: the
/// non-zerodivisor condition for every `j < l`, each localization step from
/// `l` down to 3, and the base case.
pub fn verify_primality_steps(grid: &Grid, d: usize) -> Result<VerificationReport> {
    main_regime(grid, d)?;
    let mut report = VerificationReport::new(format!("primality steps k={} l={} d={d}", grid.k, grid.l));
    for j in 1..grid.l {
        report.absorb(check_nzd(grid, d, j)?);
    }
    for l in (3..=grid.l).rev() {
        report.absorb(verify_localization_step(&Grid::new(grid.k, l)?, d)?);
    }
    report.absorb(verify_base_case(grid.k, d)?);
    Ok(report)
}

/// For `S ∈ L`, the transversal minor `[A]` with rows `1..=l` and columns
/// `A = (R_1 ∪ {y}) ∖ S`, where `y` is the least label of `C_i ∖ S` for the
/// grid column `C_i` holding `R_1 ∩ S`. It lies in `I_0`; the returned flag
/// says that no leading term of the Gröbner basis of `I_S` divides its
/// leading term, so it is not in `I_S`.
pub fn separating_minor(grid: &Grid, d: usize, set: &[usize]) -> Result<(MinorSpec, bool)> {
    main_regime(grid, d)?;
    let first: Vec<usize> = grid.row(1).into_iter().filter(|y| set.contains(y)).collect();
    if first.len() != 1 {
        return Err(Error::InvalidSize(format!("{} meets the first grid row {} times", grid::set_label(set), first.len())));
    }
    let col = grid.grid_col_of(first[0]);
    let extra = grid
        .col(col)
        .into_iter()
        .find(|y| !set.contains(y))
        .ok_or_else(|| Error::InvalidSize(format!("grid column {col} lies inside {}", grid::set_label(set))))?;
    let mut cols: Vec<usize> = grid.row(1).into_iter().filter(|y| !set.contains(y)).collect();
    cols.push(extra);
    let spec = MinorSpec::new((1..=grid.l).collect::<Vec<_>>(), cols)?;
    let ring = Ring::new(d, grid.size());
    let lead = spec.diagonal(&ring);
    let gens = ideals::is_minors(grid, d, 2, set, false)?;
    let clear = gens.iter().all(|g| !g.diagonal(&ring).divides(&lead));
    Ok((spec, clear))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_identities_hold_for_small_sizes() {
        for n in 2..=4 {
            for a in 1..n {
                for b in 1..=n {
                    let r = verify_square_identity(n, a, b).unwrap();
                    assert!(r.passed, "{}", r.to_text());
                }
            }
            for a in 1..=n {
                for b in 1..=n {
                    let r = verify_wide_identity(n, a, b).unwrap();
                    assert!(r.passed, "{}", r.to_text());
                }
            }
        }
        assert!(verify_square_identity(3, 3, 1).is_err());
        assert!(verify_wide_identity(3, 1, 4).is_err());
    }

    #[test]
    fn smallest_square_identity_is_the_two_by_two_expansion() {
        let id = identity(true, 2, 1, 2).unwrap();
        assert_eq!(id.summands.len(), 1);
        // p21*p12 - p22*p11 = -(p11 p22 - p12 p21).
        assert_eq!(id.lhs(), -&id.summands[0].1);
        assert!(!id.printed[0]);
    }

    #[test]
    fn wrong_signs_are_detected_and_corrected() {
        let id = identity(false, 3, 1, 2).unwrap();
        let flipped: Vec<bool> = id.printed.iter().map(|s| !s).collect();
        assert_ne!(id.rhs(&flipped), id.lhs());
        assert_eq!(id.solve_signs(), vec![id.printed.clone()]);
    }

    #[test]
    fn branch_formula_outside_its_condition_disagrees() {
        // n=5, a=2, b=4 lies in the b=n-1 branch; the b<n-1 formula puts two
        // variables in row 4 there.
        let spec = CaseSpec::new(Case::SquareBelow, 5, 2, 4).unwrap();
        let rows = table();
        let wrong = rows
            .iter()
            .find(|r| r.case == Case::SquareBelow && r.part == Part::SPoly && r.branch == "b<n-1")
            .unwrap();
        let right = rows
            .iter()
            .find(|r| r.case == Case::SquareBelow && r.part == Part::SPoly && r.branch == "b=n-1, a<n-2")
            .unwrap();
        let at = At { n: 5, a: 2, b: 4, i: 0 };
        assert!(!(wrong.when)(&at) && (right.when)(&at));
        let ring = Ring::new(5, 5);
        let report = verify_table(&spec).unwrap();
        let s_item = report.items.iter().find(|i| i.row.as_deref() == Some(&right.id()[..])).unwrap();
        assert!(s_item.passed);
        let truth = formula_monomial(&ring, &(right.formula)(&at)).unwrap();
        assert_ne!(formula_monomial(&ring, &(wrong.formula)(&at)), Some(truth));
    }

    #[test]
    fn tag_examples() {
        let tag_of = |case, n, a, b| {
            let r = verify_table(&CaseSpec::new(case, n, a, b).unwrap()).unwrap();
            assert!(r.passed, "{}", r.to_text());
            r.items.iter().find(|i| i.name == "S-polynomial").unwrap().detail.clone().unwrap()
        };
        assert!(tag_of(Case::SquareBelow, 5, 1, 3).ends_with("tag Some(2)"));
        assert!(tag_of(Case::SquareBelow, 4, 2, 3).ends_with("tag Some(1)"));
        assert!(tag_of(Case::WideAbove, 4, 4, 3).ends_with("tag Some(1)"));
    }

    #[test]
    fn case_constraints() {
        assert!(CaseSpec::new(Case::SquareBelow, 5, 2, 4).is_ok());
        assert!(CaseSpec::new(Case::SquareBelow, 5, 4, 2).is_err());
        assert!(CaseSpec::new(Case::SquareAbove, 5, 4, 4).is_ok());
        assert!(CaseSpec::new(Case::SquareAbove, 5, 5, 1).is_err());
        assert!(CaseSpec::new(Case::WideAbove, 4, 4, 3).is_ok());
        assert!(CaseSpec::new(Case::WideAbove, 4, 1, 1).is_err());
        assert!(CaseSpec::new(Case::WideBelow, 4, 4, 5).is_err());
    }

    #[test]
    fn formula_cells_respect_empty_runs() {
        let ring = Ring::new(3, 3);
        let c = cells().run(1, 0, 0).run(1, 3, 0);
        let m = formula_monomial(&ring, &c).unwrap();
        assert_eq!(ring.format_monomial(&m), "p_{1,1}*p_{2,2}*p_{3,3}");
        assert!(formula_monomial(&ring, &cells().p(4, 1)).is_none());
    }

    #[test]
    fn localizing_away_from_the_generators_changes_nothing() {
        let grid = Grid::new(2, 2).unwrap();
        let gens = ideals::is_minors(&grid, 2, 2, &[1, 3], false).unwrap();
        // Column 4 appears only in 2-minors; with row 1 already in every
        // row pool the closure holds, and dropping nothing leaves G intact.
        let far: Vec<MinorSpec> = gens.iter().filter(|g| !g.cols().contains(&2)).cloned().collect();
        let local = localize(&far, 2, &[1], &[2]).unwrap();
        assert_eq!(local, far);
    }

    #[test]
    fn closure_hypothesis_is_enforced() {
        let only = vec![MinorSpec::new(vec![1, 2], vec![1, 2]).unwrap()];
        assert!(matches!(localize(&only, 3, &[3], &[1]), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn nzd_range() {
        let grid = Grid::new(2, 3).unwrap();
        assert!(check_nzd(&grid, 3, 1).unwrap().passed);
        assert!(check_nzd(&grid, 3, 2).unwrap().passed);
        assert!(matches!(check_nzd(&grid, 3, 3), Err(Error::Regime(_))));
    }

    #[test]
    fn separating_minor_example() {
        let grid = Grid::new(2, 3).unwrap();
        // S = {1, 4}: R_1 = {1, 3, 5}, R_1 ∩ S = {1} in C_1, y = 2.
        let (spec, clear) = separating_minor(&grid, 3, &[1, 4]).unwrap();
        assert_eq!(spec.cols(), &[2, 3, 5]);
        assert!(clear);
    }
}

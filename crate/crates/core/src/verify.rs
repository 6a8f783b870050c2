//! End-to-end checks of the main results on one instance: Gröbner bases,
//! radicality, the component list and its incomparability, dimensions, the
//! point census, and the worked examples. Shared by the command line and
//! the acceptance suite.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{self, Grid, Hypergraph};
use crate::groebner::{self, GroebnerBasis, Limits, RadicalCertificate};
use crate::ideals::{self, Ideal, Instance, MinorSpec};
use crate::poly::{Field, Monomial, Rationals, Ring};
use crate::proofcheck;
use crate::report::VerificationReport;
use crate::simplicial::{self, DimensionReport};
use crate::variety::{self, PointCensus};

/// One prime component: `I_0` (no set) or `I_S`.
#[derive(Debug, Clone)]
pub struct Component<F: Field> {
    pub set: Option<Vec<usize>>,
    pub ideal: Ideal<F>,
}

impl<F: Field> Component<F> {
    pub fn label(&self, grid: &Grid) -> String {
        match &self.set {
            None => "I_0".to_string(),
            Some(s) => format!("I_{{{}}}", row_order_label(grid, s)),
        }
    }
}

/// A label set written cell by cell in grid-row order, the way the
/// examples name transversals (`{2,3}` on the `2 x 3` grid is `32`).
pub fn row_order_label(grid: &Grid, set: &[usize]) -> String {
    let mut cells = set.to_vec();
    cells.sort_by_key(|&y| (grid.grid_row_of(y), y));
    grid::set_label(&cells)
}

/// `I_0` followed by `I_S` for every `S ∈ L`, in the main regime.
pub fn components<F: Field>(inst: &Instance, field: F) -> Result<Vec<Component<F>>> {
    inst.require_main_regime()?;
    let g = inst.grid();
    let mut out = vec![Component {
        set: None,
        ideal: ideals::ideal_i0_minimal(&g, inst.d, inst.s, inst.t, field)?,
    }];
    for set in grid::script_l(&g)? {
        let ideal = ideals::ideal_is(&g, inst.d, inst.s, &set, field, false)?;
        out.push(Component { set: Some(set), ideal });
    }
    Ok(out)
}

/// `l^k - l + 1`.
pub fn component_formula(k: usize, l: usize) -> usize {
    l.pow(k as u32) - l + 1
}

/// Checks that each component's generating set satisfies Buchberger's
/// criterion, replaying every reduction trace when `replay` is set.
pub fn verify_groebner<F: Field>(inst: &Instance, field: F, replay: bool) -> Result<VerificationReport> {
    let g = inst.grid();
    let mut report = VerificationReport::new(format!("groebner bases {inst} over {}", field.kind()));
    for c in components(inst, field)? {
        let check = groebner::is_groebner(c.ideal.generators(), replay)?;
        let witness = match (&check.witness, check.trace_failures.first()) {
            (Some(w), _) => Some(format!("S({}, {}) leaves {}", w.i, w.j, w.remainder)),
            (None, Some((i, j))) => Some(format!("trace of S({i}, {j}) does not replay")),
            _ => None,
        };
        report.record(
            format!("{} generators form a Groebner basis", c.label(&g)),
            check.passed(),
            Some(format!(
                "{} generators, {} pairs, {} coprime, {} traces replayed",
                c.ideal.generators().len(),
                check.pairs_total,
                check.pairs_coprime,
                check.traces_replayed
            )),
            witness,
        );
    }
    Ok(report)
}

/// Computes the reduced Gröbner basis of each component and checks that
/// its leading monomials are squarefree.
pub fn verify_radical<F: Field>(inst: &Instance, field: F, limits: &Limits) -> Result<VerificationReport> {
    let g = inst.grid();
    let mut report = VerificationReport::new(format!("squarefree initial ideals {inst} over {}", field.kind()));
    for c in components(inst, field)? {
        let gb = c.ideal.groebner_basis(limits)?;
        record_certificate(&mut report, &c.label(&g), &gb);
    }
    Ok(report)
}

fn record_certificate<F: Field>(report: &mut VerificationReport, label: &str, gb: &GroebnerBasis<F>) {
    let cert = groebner::radical_certificate(gb);
    let witness = match &cert {
        RadicalCertificate::Squarefree => None,
        RadicalCertificate::Inconclusive { element, monomial } => Some(format!(
            "element {element} has leading monomial {}",
            gb.ring().format_monomial(monomial)
        )),
    };
    report.record(
        format!("{label} has squarefree leading monomials"),
        cert.is_squarefree(),
        Some(format!("{} basis elements", gb.len())),
        witness,
    );
}

/// Compares the enumerated component count with `l^k - l + 1`.
pub fn verify_component_count(k: usize, l: usize) -> Result<VerificationReport> {
    let grid = Grid::new(k, l)?;
    let count = 1 + grid::script_l(&grid)?.len();
    let want = component_formula(k, l);
    let mut report = VerificationReport::new(format!("component count k={k} l={l}"));
    report.record(
        "enumerated components match l^k - l + 1",
        count == want,
        Some(format!("{count} components, formula {want}")),
        Some(format!("enumerated {count}, formula {want}")),
    );
    Ok(report)
}

/// Pairwise incomparability by ideal membership: for every ordered pair
/// some generator of the first component is not in the second.
pub fn verify_incomparable_by_membership<F: Field>(
    inst: &Instance,
    field: F,
    limits: &Limits,
) -> Result<VerificationReport> {
    let g = inst.grid();
    let comps = components(inst, field)?;
    let bases = comps
        .iter()
        .map(|c| c.ideal.groebner_basis(limits))
        .collect::<Result<Vec<_>>>()?;
    let mut report = VerificationReport::new(format!("incomparable components {inst} by membership"));
    for (a, ca) in comps.iter().enumerate() {
        for (b, cb) in comps.iter().enumerate() {
            if a == b {
                continue;
            }
            let out = groebner::first_non_member(&bases[b], ca.ideal.generators())?;
            report.record(
                format!("{} not contained in {}", ca.label(&g), cb.label(&g)),
                out.is_some(),
                out.map(|i| format!("generator {} of {} is not in {}", ca.ideal.generators()[i], ca.label(&g), cb.label(&g))),
                Some("every generator reduces to zero".into()),
            );
        }
    }
    Ok(report)
}

/// Index of an element whose leading monomial no monomial of `lead`
/// divides. Such an element lies outside any ideal with initial ideal
/// generated by `lead`.
fn escapes(monomials: &[Monomial], lead: &[Monomial]) -> Option<usize> {
    monomials.iter().position(|m| !lead.iter().any(|l| l.divides(m)))
}

/// Pairwise incomparability from leading terms alone, taking each
/// component's generators as its Gröbner basis: `I_0 ⊄ I_S` by the
/// separating transversal minor (checked to lie in `I_0`), and `I_S ⊄ X`
/// by a variable of `I_S` whose leading term escapes `in(X)`.
pub fn verify_incomparable_by_witness(inst: &Instance) -> Result<VerificationReport> {
    let g = inst.grid();
    let ring = inst.ring();
    let comps = components(inst, Rationals)?;
    let leads: Vec<Vec<Monomial>> = comps
        .iter()
        .map(|c| c.ideal.generators().iter().map(|p| p.leading_monomial().expect("nonzero").clone()).collect())
        .collect();
    let i0_basis = GroebnerBasis::from_elements(ring, Rationals, comps[0].ideal.generators().to_vec())?;
    let mut report = VerificationReport::new(format!("incomparable components {inst} by leading terms"));
    for (a, ca) in comps.iter().enumerate() {
        for (b, cb) in comps.iter().enumerate() {
            if a == b {
                continue;
            }
            let name = format!("{} not contained in {}", ca.label(&g), cb.label(&g));
            match (&ca.set, &cb.set) {
                (None, Some(set)) => {
                    let (spec, clear) = proofcheck::separating_minor(&g, inst.d, set)?;
                    let f = ideals::minor(ring, Rationals, &spec)?;
                    let in_i0 = i0_basis.contains(&f)?;
                    report.record(
                        name,
                        clear && in_i0,
                        Some(format!("{spec} lies in I_0 and its leading term escapes in({})", cb.label(&g))),
                        Some(format!("{spec}: in I_0 {in_i0}, escapes {clear}")),
                    );
                }
                _ => {
                    let variables: Vec<Monomial> = leads[a].iter().filter(|m| m.degree() == 1).cloned().collect();
                    let hit = escapes(&variables, &leads[b]);
                    report.record(
                        name,
                        hit.is_some(),
                        hit.map(|i| format!("{} escapes in({})", ring.format_monomial(&variables[i]), cb.label(&g))),
                        Some("every variable generator is divisible".into()),
                    );
                }
            }
        }
    }
    Ok(report)
}

/// Dimension of `R/I` for every component from the Stanley-Reisner
/// complex of its initial ideal, seeded with the explicit witness face and
/// compared with the closed formulas.
pub fn verify_dimensions(inst: &Instance, limits: &Limits) -> Result<(VerificationReport, Vec<DimensionReport>)> {
    let g = inst.grid();
    let mut report = VerificationReport::new(format!("dimensions {inst}"));
    let mut rows = Vec::new();
    for c in components(inst, Rationals)? {
        let gb = c.ideal.groebner_basis(limits)?;
        let row = dimension_report(&c.label(&g), &gb, &g, inst.d, c.set.as_deref())?;
        let formula = row.formula.expect("main regime");
        report.record(
            format!("{} dimension matches the formula", row.label),
            row.dimension == formula,
            Some(format!("dimension {}, formula {formula}", row.dimension)),
            Some(format!("search found {}", row.dimension)),
        );
        report.record(
            format!("{} witness face attains the maximum", row.label),
            row.witness_is_face && row.witness.len() == row.dimension,
            Some(format!("{} vertices", row.witness.len())),
            Some(row.witness.join(" ")),
        );
        rows.push(row);
    }
    Ok((report, rows))
}

/// Dimension of `R/I` for a Gröbner basis on a grid. With a grid in the
/// main regime the explicit witness face (for `I_S` when `set` is given,
/// for `I_0` otherwise) seeds the search and the formula is attached.
pub fn dimension_report<F: Field>(
    label: &str,
    gb: &GroebnerBasis<F>,
    grid: &Grid,
    d: usize,
    set: Option<&[usize]>,
) -> Result<DimensionReport> {
    let complex = simplicial::sr_complex(gb)?;
    let ring = gb.ring();
    let regime = Instance::main(grid.k, grid.l, d)?.in_main_regime();
    let (witness, formula) = if regime {
        match set {
            Some(s) => (simplicial::witness_face_is(grid, d, s)?, Some(simplicial::formula_dim_is(grid, d))),
            None => (simplicial::witness_face_i0(grid, d)?, Some(simplicial::formula_dim_i0(grid, d))),
        }
    } else {
        (Vec::new(), None)
    };
    let mask = complex.face_mask(&witness)?;
    let witness_is_face = complex.is_face(mask);
    let seed = if witness_is_face { Some(mask) } else { None };
    let dimension = complex.dimension(Some(grid), seed, simplicial::DEFAULT_VERTEX_BOUND)?;
    Ok(DimensionReport {
        label: label.to_string(),
        variables: ring.nvars(),
        dimension,
        codimension: ring.nvars() - dimension,
        formula,
        witness: witness.iter().map(|v| v.to_string()).collect(),
        witness_is_face,
    })
}

/// One symmetry class of components.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentClass {
    pub kind: usize,
    pub representative: String,
    pub occurrences: usize,
    /// Every member of the class, labelled like the representative.
    pub members: Vec<String>,
    pub generators: usize,
    pub dimension: usize,
    /// Number of variables minus the dimension.
    pub codimension: usize,
}

/// The component table: `I_0`, then one row per orbit of `L` under
/// permuting grid rows and grid columns, represented by its
/// lexicographically least set. Smaller orbits come first.
pub fn component_table(inst: &Instance, limits: &Limits) -> Result<Vec<ComponentClass>> {
    inst.require_main_regime()?;
    let g = inst.grid();
    let mut classes = grid::symmetry_classes(&g, &grid::script_l(&g)?);
    classes.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a[0].cmp(&b[0])));
    let i0 = ideals::ideal_i0_minimal(&g, inst.d, inst.s, inst.t, Rationals)?;
    let mut table = vec![class_row(0, vec!["I_0".into()], &i0, &g, inst.d, None, limits)?];
    for (n, class) in classes.iter().enumerate() {
        let rep = &class[0];
        let ideal = ideals::ideal_is(&g, inst.d, inst.s, rep, Rationals, false)?;
        let members = class.iter().map(|s| format!("I_{{{}}}", row_order_label(&g, s))).collect();
        table.push(class_row(n + 1, members, &ideal, &g, inst.d, Some(rep), limits)?);
    }
    Ok(table)
}

fn class_row(
    kind: usize,
    members: Vec<String>,
    ideal: &Ideal<Rationals>,
    grid: &Grid,
    d: usize,
    set: Option<&[usize]>,
    limits: &Limits,
) -> Result<ComponentClass> {
    let gb = ideal.groebner_basis(limits)?;
    let dim = dimension_report(&members[0], &gb, grid, d, set)?;
    Ok(ComponentClass {
        kind,
        representative: members[0].clone(),
        occurrences: members.len(),
        members,
        generators: ideal.generators().len(),
        dimension: dim.dimension,
        codimension: dim.codimension,
    })
}

/// Counts points of `V(J)` and of every component over `GF(q)` and checks
/// that the union of the components is `V(J)`.
pub fn verify_census(inst: &Instance, q: u32, bound: u128, force: bool) -> Result<(VerificationReport, PointCensus)> {
    let census = variety::census(inst, q, bound, force)?;
    let mut report = VerificationReport::new(format!("point census {inst} over GF({q})"));
    let show = |w: &[Vec<Vec<u32>>]| w.first().map(|p| format!("{p:?}"));
    report.record(
        "every point of V(J) lies on a component",
        census.missing == 0,
        Some(format!("{} points, |V(J)| = {}", census.points, census.v_j)),
        show(&census.missing_witnesses),
    );
    report.record(
        "every point of a component lies on V(J)",
        census.extra == 0,
        Some(format!("|V(I_0)| = {}", census.v_i0)),
        show(&census.extra_witnesses),
    );
    Ok((report, census))
}

/// The decomposition as an equality of ideals: `J` has a squarefree initial
/// ideal, hence is radical, and equals the intersection of its components.
pub fn verify_intersection(inst: &Instance, limits: &Limits) -> Result<VerificationReport> {
    let g = inst.grid();
    let j = ideals::ci_ideal(inst, Rationals)?;
    let mut report = VerificationReport::new(format!("intersection of components {inst}"));
    let jb = j.groebner_basis(limits)?;
    record_certificate(&mut report, "J", &jb);
    let comps = components(inst, Rationals)?;
    let refs: Vec<&Ideal<Rationals>> = comps.iter().map(|c| &c.ideal).collect();
    let meet = groebner::intersect(&refs, limits)?;
    let mb = meet.groebner_basis(limits)?;
    let same = mb.elements() == jb.elements();
    let labels: Vec<String> = comps.iter().map(|c| c.label(&g)).collect();
    report.record(
        format!("{} equals J", labels.join(" ∩ ")),
        same,
        Some(format!("reduced bases of {} and {} elements", mb.len(), jb.len())),
        Some(first_difference(&mb, &jb)),
    );
    Ok(report)
}

fn first_difference<F: Field>(a: &GroebnerBasis<F>, b: &GroebnerBasis<F>) -> String {
    match a.elements().iter().zip(b.elements()).position(|(x, y)| x != y) {
        Some(i) => format!("element {i}: {} vs {}", a.elements()[i], b.elements()[i]),
        None => format!("lengths {} and {}", a.len(), b.len()),
    }
}

/// Both expansion identities for every valid `(a, b)` and every size in
/// `ns`.
pub fn verify_identities(ns: &[usize]) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(format!("expansion identities, n in {ns:?}"));
    for &n in ns {
        for a in 1..=n {
            for b in 1..=n {
                if a < n {
                    report.absorb(proofcheck::verify_square_identity(n, a, b)?);
                }
                report.absorb(proofcheck::verify_wide_identity(n, a, b)?);
            }
        }
    }
    Ok(report)
}

/// The hypergraph of the `s = 3` example on the `3 x 3` grid: the three
/// grid columns and the three grid rows.
pub fn triple_edges() -> Result<Hypergraph> {
    Hypergraph::parse_edges(9, "123,456,789,147,258,369")
}

/// Lex Gröbner basis of the 3-minors of [`triple_edges`] with `d = 3`, and
/// the squarefree test on its leading monomials.
pub fn verify_triple_example<F: Field>(field: F, limits: &Limits) -> Result<(VerificationReport, GroebnerBasis<F>)> {
    let ideal = ideals::hyperedge_ideal(3, &triple_edges()?, field)?;
    let mut report = VerificationReport::new(format!("3-minors of the 3x3 grid rows and columns over {}", field.kind()));
    report.record(
        "generator count",
        ideal.generators().len() == 6,
        Some(format!("{} 3-minors", ideal.generators().len())),
        None,
    );
    let gb = ideal.groebner_basis(limits)?;
    record_certificate(&mut report, "lex basis", &gb);
    Ok((report, (*gb).clone()))
}

/// Parses a generator written `p11`, `[12|56]` (rows | columns) or
/// `[235]` (all `d` rows).
pub fn parse_minor(text: &str, d: usize) -> Result<MinorSpec> {
    let t = text.trim();
    let digits = |s: &str| -> Result<Vec<usize>> {
        s.chars()
            .map(|c| c.to_digit(10).map(|x| x as usize))
            .collect::<Option<Vec<_>>>()
            .filter(|v| !v.is_empty())
            .ok_or_else(|| Error::Parse(format!("bad generator {text:?}")))
    };
    if let Some(rest) = t.strip_prefix('p') {
        let v = digits(rest)?;
        if v.len() != 2 {
            return Err(Error::Parse(format!("bad variable {text:?}")));
        }
        return MinorSpec::new(vec![v[0]], vec![v[1]]);
    }
    let inner = t
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("bad generator {text:?}")))?;
    match inner.split_once('|') {
        Some((r, c)) => MinorSpec::new(digits(r)?, digits(c)?),
        None => {
            let cols = digits(inner)?;
            MinorSpec::new((1..=d).collect::<Vec<_>>(), cols)
        }
    }
}

/// The two ideals of the `t < l` example on the `2 x 4` grid with `d = 3`,
/// as listed there.
pub const EXAMPLE_I14: &str = "p11 p21 p31 p14 p24 p34 [12|56] [13|56] [23|56] [12|78] [13|78] [23|78] \
     [235] [236] [237] [238] [257] [258] [267] [268] [357] [358] [367] [368]";
pub const EXAMPLE_I14_STAR: &str = "p11 p21 p31 p14 p24 p34 [12|56] [13|56] [23|56] [12|57] [13|57] [23|57] \
     [12|58] [13|58] [23|58] [12|67] [13|67] [23|67] [12|68] [13|68] [23|68] [12|78] [13|78] [23|78]";
/// The edge list whose hyperedge ideal is `I_14^*`.
pub const EXAMPLE_DELTA_STAR: &str = "1,4,56,57,58,67,68,78";

pub fn example_ideal<F: Field>(listing: &str, field: F, label: &str) -> Result<Ideal<F>> {
    let grid = Grid::new(2, 4)?;
    let minors = listing
        .split_whitespace()
        .map(|t| parse_minor(t, 3))
        .collect::<Result<Vec<_>>>()?;
    Ok(Ideal::from_minors(Ring::new(3, grid.size()), field, minors)?
        .with_grid(grid)
        .with_label(label))
}

/// The ideals of the `t < l` example: `I_0`, `I_14` and `I_14^*`.
pub fn example_ideals<F: Field>(field: F) -> Result<[Ideal<F>; 3]> {
    let grid = Grid::new(2, 4)?;
    Ok([
        ideals::i0_ideal(&grid, 3, 3, field)?,
        example_ideal(EXAMPLE_I14, field, "I_14")?,
        example_ideal(EXAMPLE_I14_STAR, field, "I_14^*")?,
    ])
}

/// `I_0 ⊆ I_14`, `I_14 ⊄ I_14^*` and `I_14^* ⊄ I_14`; also that `I_14^*`
/// is the hyperedge ideal of its edge list.
pub fn verify_containment_example<F: Field>(field: F, limits: &Limits) -> Result<VerificationReport> {
    let [i0, i14, star] = example_ideals(field)?;
    let mut report = VerificationReport::new(format!("containments on the 2x4 grid over {}", field.kind()));
    let from_edges = ideals::hyperedge_ideal(3, &Hypergraph::parse_edges(8, EXAMPLE_DELTA_STAR)?, field)?;
    report.record(
        "I_14^* is the hyperedge ideal of its edge list",
        from_edges.minors() == star.minors(),
        Some(format!("{} generators", star.generators().len())),
        None,
    );
    let b14 = i14.groebner_basis(limits)?;
    let bstar = star.groebner_basis(limits)?;
    let mut containment = |name: &str, basis: &GroebnerBasis<F>, sub: &Ideal<F>, want: bool| -> Result<()> {
        let out = groebner::first_non_member(basis, sub.generators())?;
        report.record(
            name,
            out.is_none() == want,
            Some(match out {
                Some(i) => format!("{} is not a member", sub.generators()[i]),
                None => "every generator is a member".into(),
            }),
            None,
        );
        Ok(())
    };
    containment("I_0 ⊆ I_14", &b14, &i0, true)?;
    containment("I_14 ⊄ I_14^*", &bstar, &i14, false)?;
    containment("I_14^* ⊄ I_14", &b14, &star, false)?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_follow_grid_rows() {
        let g = Grid::new(2, 3).unwrap();
        assert_eq!(row_order_label(&g, &[2, 3]), "32");
        assert_eq!(row_order_label(&g, &[1, 4]), "14");
        let g = Grid::new(3, 3).unwrap();
        assert_eq!(row_order_label(&g, &[1, 2, 6]), "126");
    }

    #[test]
    fn minor_notation() {
        assert_eq!(parse_minor("p34", 3).unwrap(), MinorSpec::new(vec![3], vec![4]).unwrap());
        assert_eq!(parse_minor("[13|56]", 3).unwrap(), MinorSpec::new(vec![1, 3], vec![5, 6]).unwrap());
        assert_eq!(parse_minor("[235]", 3).unwrap(), MinorSpec::new(vec![1, 2, 3], vec![2, 3, 5]).unwrap());
        assert!(parse_minor("[1|]", 3).is_err());
        assert!(parse_minor("q11", 3).is_err());
    }

    #[test]
    fn example_listings_have_24_generators() {
        let [i0, i14, star] = example_ideals(Rationals).unwrap();
        assert_eq!(i14.generators().len(), 24);
        assert_eq!(star.generators().len(), 24);
        assert_eq!(i0.generators().len(), 44);
    }
}

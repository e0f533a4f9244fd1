//! Equivariant classes in the GKM model: one polynomial per vertex, with the
//! difference across every edge divisible by the edge label.

use std::borrow::Cow;
use std::collections::BTreeMap;

use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::error::{GkmError, Result};
use crate::graph::{MomentGraph, PalaisSmale};
use crate::linalg::{nullspace, Matrix};
use crate::poly::{LinearForm, Monomial, Polynomial, Rational};
use crate::weyl::WeylElement;

/// Bound on the number of unknowns in [`class_space_by_degree`].
pub const MAX_CLASS_SPACE_UNKNOWNS: usize = 4000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivariantClass {
    graph_id: String,
    values: Vec<Polynomial>,
}

impl EquivariantClass {
    pub fn from_values(g: &MomentGraph, values: Vec<Polynomial>) -> Result<Self> {
        if values.len() != g.num_vertices() {
            return Err(GkmError::Argument(format!(
                "class has {} values, graph {} has {} vertices",
                values.len(),
                g.id(),
                g.num_vertices()
            )));
        }
        if let Some(p) = values.iter().find(|p| p.num_vars() != g.num_vars()) {
            return Err(GkmError::TypeMismatch(format!(
                "value in {} variables on a graph with {}",
                p.num_vars(),
                g.num_vars()
            )));
        }
        Ok(EquivariantClass { graph_id: g.id().to_string(), values })
    }

    /// Builds a class from a total assignment vertex -> polynomial.
    pub fn from_map(g: &MomentGraph, map: &BTreeMap<WeylElement, Polynomial>) -> Result<Self> {
        if map.len() != g.num_vertices() {
            return Err(GkmError::Argument("assignment is not total on the vertices".into()));
        }
        let values = g
            .vertices()
            .iter()
            .map(|v| map.get(v).cloned().ok_or_else(|| GkmError::Argument(format!("no value at vertex {v}"))))
            .collect::<Result<Vec<_>>>()?;
        EquivariantClass::from_values(g, values)
    }

    /// Parses `(element, polynomial)` pairs in text form; convenient for
    /// writing down small classes.
    pub fn from_strings(g: &MomentGraph, pairs: &[(&str, &str)]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (w, p) in pairs {
            let w = WeylElement::parse(g.lie_type(), w)?;
            map.insert(w, Polynomial::parse(g.num_vars(), p)?);
        }
        EquivariantClass::from_map(g, &map)
    }

    pub fn zero(g: &MomentGraph) -> Self {
        EquivariantClass {
            graph_id: g.id().to_string(),
            values: vec![Polynomial::zero(g.num_vars()); g.num_vertices()],
        }
    }

    pub fn constant(g: &MomentGraph, p: &Polynomial) -> Self {
        EquivariantClass { graph_id: g.id().to_string(), values: vec![p.clone(); g.num_vertices()] }
    }

    pub fn graph_id(&self) -> &str {
        &self.graph_id
    }

    pub fn values(&self) -> &[Polynomial] {
        &self.values
    }

    pub fn at(&self, v: usize) -> &Polynomial {
        &self.values[v]
    }

    pub fn value_at(&self, g: &MomentGraph, w: &WeylElement) -> Result<&Polynomial> {
        self.check_graph(g)?;
        Ok(&self.values[g.require_vertex(w)?])
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|p| p.is_zero())
    }

    pub(crate) fn with_values(&self, values: Vec<Polynomial>) -> Self {
        EquivariantClass { graph_id: self.graph_id.clone(), values }
    }

    pub fn check_graph(&self, g: &MomentGraph) -> Result<()> {
        if self.graph_id != g.id() || self.values.len() != g.num_vertices() {
            return Err(GkmError::Argument(format!("class on graph {} used with graph {}", self.graph_id, g.id())));
        }
        Ok(())
    }

    fn check_same(&self, other: &EquivariantClass) -> Result<()> {
        if self.graph_id != other.graph_id || self.values.len() != other.values.len() {
            return Err(GkmError::Argument(format!(
                "classes live on different graphs ({} vs {})",
                self.graph_id, other.graph_id
            )));
        }
        Ok(())
    }

    fn zip_with(&self, other: &EquivariantClass, f: impl Fn(&Polynomial, &Polynomial) -> Polynomial) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.with_values(self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect()))
    }

    pub fn add(&self, other: &EquivariantClass) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &EquivariantClass) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &EquivariantClass) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn scale_by_poly(&self, c: &Polynomial) -> Self {
        self.with_values(self.values.iter().map(|p| p * c).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.with_values(self.values.iter().map(|p| p.scale(c)).collect())
    }

    pub fn to_json(&self, g: &MomentGraph) -> Result<String> {
        self.check_graph(g)?;
        let mut values = Map::new();
        for (v, p) in g.vertices().iter().zip(&self.values) {
            values.insert(v.to_string(), p.to_json());
        }
        let doc = json!({ "graph": self.graph_id, "values": Value::Object(values) });
        Ok(serde_json::to_string_pretty(&doc).expect("class serializes"))
    }

    pub fn from_json(g: &MomentGraph, text: &str) -> Result<Self> {
        let doc: Value = serde_json::from_str(text).map_err(|e| GkmError::Parse(format!("class JSON: {e}")))?;
        let graph = doc["graph"].as_str().ok_or_else(|| GkmError::Parse("class JSON: graph".into()))?;
        if graph != g.id() {
            return Err(GkmError::Argument(format!("class is for graph {graph}, not {}", g.id())));
        }
        let values = doc["values"].as_object().ok_or_else(|| GkmError::Parse("class JSON: values".into()))?;
        let mut map = BTreeMap::new();
        for (k, v) in values {
            map.insert(WeylElement::parse(g.lie_type(), k)?, Polynomial::from_json(g.num_vars(), v)?);
        }
        EquivariantClass::from_map(g, &map)
    }
}

/// An edge whose endpoint difference is not divisible by its label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GkmViolation {
    pub edge: usize,
    pub difference: Polynomial,
}

/// Empty iff the class satisfies every edge condition.
pub fn check_gkm(g: &MomentGraph, c: &EquivariantClass) -> Result<Vec<GkmViolation>> {
    c.check_graph(g)?;
    let mut out = Vec::new();
    for (k, e) in g.edges().iter().enumerate() {
        let diff = c.at(e.source) - c.at(e.target);
        if !diff.is_divisible_by(&e.label)? {
            out.push(GkmViolation { edge: k, difference: diff });
        }
    }
    Ok(out)
}

pub fn is_gkm(g: &MomentGraph, c: &EquivariantClass) -> Result<bool> {
    Ok(check_gkm(g, c)?.is_empty())
}

fn product_of_down_labels(g: &MomentGraph, v: usize) -> Polynomial {
    Polynomial::product_of_forms(g.num_vars(), g.down_edges(v).iter().map(|&k| &g.edges()[k].label))
}

/// The class supported at the unique maximal vertex, with the product of its
/// down-edge labels there.
pub fn top_class(g: &MomentGraph) -> Result<EquivariantClass> {
    let maxima = g.maximal_vertices();
    if maxima.len() != 1 {
        return Err(GkmError::Unsupported(format!("graph {} has {} maximal vertices", g.id(), maxima.len())));
    }
    let mut c = EquivariantClass::zero(g);
    c.values[maxima[0]] = product_of_down_labels(g, maxima[0]);
    Ok(c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flow {
    /// Supported above the vertex (zero below).
    Up,
    /// Supported below the vertex (zero above).
    Down,
}

/// Finds the homogeneous degree-`d` polynomial `p` with `p ≡ c_k (mod α_k)`
/// for every pair, by successive exact interpolation.
fn interpolate(num_vars: usize, degree: u32, congruences: &[(&Polynomial, &LinearForm)]) -> Result<Polynomial> {
    let mut p = Polynomial::zero(num_vars);
    let mut product = Polynomial::one(num_vars);
    let mut used: Vec<&LinearForm> = Vec::new();
    for &(target, form) in congruences {
        let k = form.leading_index().expect("edge labels are nonzero");
        let lead = form.coeffs()[k];
        let (_, residue) = (target - &p).div_rem_linear(form)?;
        // images of the earlier moduli in the quotient by `form`, scaled to stay integral
        let mut reduced = Vec::with_capacity(used.len());
        let mut proportional = false;
        for prev in &used {
            let r = LinearForm::new(
                prev.coeffs().iter().zip(form.coeffs()).map(|(&a, &b)| lead * a - prev.coeffs()[k] * b),
            );
            if r.is_zero() {
                proportional = true;
                break;
            }
            reduced.push(r);
        }
        if proportional {
            if !residue.is_zero() {
                return Err(GkmError::Inconsistent(format!("conflicting conditions modulo {form}")));
            }
            continue;
        }
        if !residue.is_zero() {
            let mut q = residue;
            for r in &reduced {
                q = q
                    .divide_exact(r)
                    .map_err(|_| GkmError::Inconsistent(format!("no degree-{degree} solution modulo {form}")))?;
            }
            let scale = (0..reduced.len())
                .fold(Rational::from_integer(1.into()), |acc, _| acc * Rational::from_integer(lead.into()));
            p = &p + &(&q.scale(&scale) * &product);
        }
        product = &product * &form.to_polynomial();
        used.push(form);
    }
    if used.len() as u32 <= degree && congruences.len() as u32 > 0 {
        return Err(GkmError::Inconsistent(format!(
            "{} independent conditions do not determine a degree-{degree} value",
            used.len()
        )));
    }
    if !p.is_homogeneous_of_degree(degree) {
        return Err(GkmError::Inconsistent(format!("solution is not homogeneous of degree {degree}")));
    }
    Ok(p)
}

/// The canonical class of `v`: supported on the flow from `v`, equal at `v`
/// to the product of the labels of the edges leaving `v` in the flow
/// direction, homogeneous, and satisfying every edge condition.
pub fn canonical_class_solve(g: &MomentGraph, v: &WeylElement, direction: Flow) -> Result<EquivariantClass> {
    let work: Cow<'_, MomentGraph> = match direction {
        Flow::Up => Cow::Borrowed(g),
        Flow::Down => Cow::Owned(g.reversed()),
    };
    if let PalaisSmale::Fails { edge } = work.palais_smale_check() {
        let e = &work.edges()[edge];
        return Err(GkmError::PalaisSmaleViolation {
            from: work.vertices()[e.source].to_string(),
            to: work.vertices()[e.target].to_string(),
        });
    }
    let vi = g.require_vertex(v)?;
    let n = g.num_vars();
    let degree = work.outdegree(vi) as u32;
    let support = work.up_set(vi);
    let mut values = vec![Polynomial::zero(n); g.num_vertices()];
    values[vi] = product_of_down_labels(&work, vi);
    for u in work.topological_order()? {
        if !support[u] || u == vi {
            continue;
        }
        let congruences: Vec<(&Polynomial, &LinearForm)> = work
            .down_edges(u)
            .iter()
            .map(|&k| {
                let e = &work.edges()[k];
                (&values[e.target], &e.label)
            })
            .collect();
        let solved = interpolate(n, degree, &congruences)
            .map_err(|e| GkmError::Inconsistent(format!("at vertex {}: {e}", g.vertices()[u])))?;
        values[u] = solved;
    }
    let class = EquivariantClass::from_values(g, values)?;
    if let Some(bad) = check_gkm(g, &class)?.first() {
        let e = &g.edges()[bad.edge];
        return Err(GkmError::Inconsistent(format!(
            "edge {} -> {} fails after solving",
            g.vertices()[e.source],
            g.vertices()[e.target]
        )));
    }
    Ok(class)
}

/// Checks the three defining conditions of the canonical class of `v`:
/// support in the flow, the prescribed value at `v`, homogeneity.
pub fn audit_canonical(g: &MomentGraph, v: &WeylElement, direction: Flow, c: &EquivariantClass) -> Result<()> {
    c.check_graph(g)?;
    let work: Cow<'_, MomentGraph> = match direction {
        Flow::Up => Cow::Borrowed(g),
        Flow::Down => Cow::Owned(g.reversed()),
    };
    let vi = g.require_vertex(v)?;
    let support = work.up_set(vi);
    let degree = work.outdegree(vi) as u32;
    for (u, p) in c.values().iter().enumerate() {
        if !support[u] && !p.is_zero() {
            return Err(GkmError::Invariant(format!("nonzero value outside the flow at {}", g.vertices()[u])));
        }
        if !p.is_homogeneous_of_degree(degree) {
            return Err(GkmError::Invariant(format!("value at {} is not of degree {degree}", g.vertices()[u])));
        }
    }
    if c.at(vi) != &product_of_down_labels(&work, vi) {
        return Err(GkmError::Invariant(format!("wrong value at {v}")));
    }
    if !check_gkm(g, c)?.is_empty() {
        return Err(GkmError::Invariant("edge conditions fail".into()));
    }
    Ok(())
}

/// Coefficients of a class in a basis, aligned with the graph's vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisExpansion {
    vertices: Vec<WeylElement>,
    coefficients: Vec<Polynomial>,
}

impl BasisExpansion {
    pub fn coefficient(&self, w: &WeylElement) -> Option<&Polynomial> {
        self.vertices.iter().position(|v| v == w).map(|k| &self.coefficients[k])
    }

    pub fn coefficients(&self) -> &[Polynomial] {
        &self.coefficients
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (&WeylElement, &Polynomial)> {
        self.vertices.iter().zip(&self.coefficients).filter(|(_, c)| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|c| c.is_zero())
    }

    /// Reduction to ordinary cohomology: every coefficient evaluated at `t = 0`.
    pub fn to_ordinary(&self) -> Vec<Rational> {
        self.coefficients.iter().map(|c| c.constant_term()).collect()
    }

    /// `Σ coefficient_w · basis_w`.
    pub fn rebuild(&self, g: &MomentGraph, basis: &[EquivariantClass]) -> Result<EquivariantClass> {
        let mut acc = EquivariantClass::zero(g);
        for (c, b) in self.coefficients.iter().zip(basis) {
            if !c.is_zero() {
                acc = acc.add(&b.scale_by_poly(c))?;
            }
        }
        Ok(acc)
    }
}

/// Expands `c` in a canonical basis by peeling off the lowest remaining
/// vertex of the support.
pub fn expand_in_basis(g: &MomentGraph, c: &EquivariantClass, basis: &[EquivariantClass]) -> Result<BasisExpansion> {
    c.check_graph(g)?;
    if basis.len() != g.num_vertices() {
        return Err(GkmError::Argument("basis must have one class per vertex".into()));
    }
    let mut rest = c.values.clone();
    let mut coefficients = vec![Polynomial::zero(g.num_vars()); g.num_vertices()];
    for w in g.topological_order()? {
        if rest[w].is_zero() {
            continue;
        }
        let coeff =
            rest[w].divide_exact_poly(basis[w].at(w)).map_err(|_| GkmError::NotInSpan(g.vertices()[w].to_string()))?;
        for (u, value) in rest.iter_mut().enumerate() {
            let b = basis[w].at(u);
            if !b.is_zero() {
                *value = &*value - &(&coeff * b);
            }
        }
        coefficients[w] = coeff;
    }
    if let Some(u) = rest.iter().position(|p| !p.is_zero()) {
        return Err(GkmError::NotInSpan(g.vertices()[u].to_string()));
    }
    Ok(BasisExpansion { vertices: g.vertices().to_vec(), coefficients })
}

/// A basis of the classes whose values are all homogeneous of degree `d`,
/// in reduced echelon form over the monomial coefficients.
pub fn class_space_by_degree(g: &MomentGraph, d: u32) -> Result<Vec<EquivariantClass>> {
    let n = g.num_vars();
    let monomials = Monomial::all_of_degree(n, d);
    let per_vertex = monomials.len();
    let unknowns = per_vertex * g.num_vertices();
    if unknowns > MAX_CLASS_SPACE_UNKNOWNS {
        return Err(GkmError::Resource(format!("{unknowns} unknowns exceed the bound {MAX_CLASS_SPACE_UNKNOWNS}")));
    }
    // restriction of each monomial to each label hyperplane
    let mut restrictions: BTreeMap<LinearForm, Vec<Polynomial>> = BTreeMap::new();
    for e in g.edges() {
        if !restrictions.contains_key(&e.label) {
            let rems = monomials
                .iter()
                .map(|m| {
                    let p = Polynomial::from_terms(n, [(m.clone(), Rational::from_integer(1.into()))]);
                    p.div_rem_linear(&e.label).map(|(_, r)| r)
                })
                .collect::<Result<Vec<_>>>()?;
            restrictions.insert(e.label.clone(), rems);
        }
    }
    let mut rows: Matrix = Vec::new();
    for e in g.edges() {
        let rems = &restrictions[&e.label];
        let mut by_monomial: BTreeMap<&Monomial, Vec<(usize, Rational)>> = BTreeMap::new();
        for (j, r) in rems.iter().enumerate() {
            for (m, c) in r.terms() {
                by_monomial.entry(m).or_default().push((j, c.clone()));
            }
        }
        for entries in by_monomial.values() {
            let mut row = vec![Rational::zero(); unknowns];
            for (j, c) in entries {
                row[e.source * per_vertex + j] += c;
                row[e.target * per_vertex + j] -= c;
            }
            rows.push(row);
        }
    }
    let kernel = nullspace(&rows, unknowns);
    kernel
        .into_iter()
        .map(|vec| {
            let values = (0..g.num_vertices())
                .map(|v| {
                    Polynomial::from_terms(
                        n,
                        monomials.iter().enumerate().map(|(j, m)| (m.clone(), vec[v * per_vertex + j].clone())),
                    )
                })
                .collect();
            EquivariantClass::from_values(g, values)
        })
        .collect()
}

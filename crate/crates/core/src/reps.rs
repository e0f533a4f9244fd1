//! Characters of the dot and star representations on ordinary cohomology,
//! the classes `q_w`, and decomposition against character tables.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::Value;

use crate::actions::{dot, star, SchubertBasis};
use crate::classes::{expand_in_basis, EquivariantClass};
use crate::error::{GkmError, Result};
use crate::graph::MomentGraph;
use crate::linalg::{determinant, rank, Matrix};
use crate::poly::{parse_rational, Rational};
use crate::weyl::{enumerate_group, Family, LieType, WeylElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Action {
    Dot,
    Star,
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Action::Dot => "dot",
            Action::Star => "star",
        })
    }
}

impl FromStr for Action {
    type Err = GkmError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(Action::Dot),
            "star" => Ok(Action::Star),
            _ => Err(GkmError::Parse(format!("unknown action {s:?}; expected dot or star"))),
        }
    }
}

/// Applies `v` to `p` by the chosen action.
pub fn act(g: &MomentGraph, action: Action, v: &WeylElement, p: &EquivariantClass) -> Result<EquivariantClass> {
    match action {
        Action::Dot => dot(g, v, p),
        Action::Star => star(g, p, v),
    }
}

/// `q_e = Σ_w p_w` and `q_w = q_e * w`, in vertex order.
pub fn q_classes(g: &MomentGraph, basis: &SchubertBasis) -> Result<Vec<EquivariantClass>> {
    let mut q_e = EquivariantClass::zero(g);
    for p in basis.classes() {
        q_e = q_e.add(p)?;
    }
    g.vertices().iter().map(|w| star(g, &q_e, w)).collect()
}

/// `t = (1, 3, 7, 15, ...)`, checked against every root hyperplane.
pub fn default_generic_point(lt: LieType) -> Result<Vec<Rational>> {
    let point: Vec<Rational> =
        (0..lt.num_vars()).map(|i| Rational::from_integer(((1i64 << (i + 1).min(62)) - 1).into())).collect();
    check_generic(lt, &point)?;
    Ok(point)
}

/// Rejects points lying on a root hyperplane.
pub fn check_generic(lt: LieType, point: &[Rational]) -> Result<()> {
    if point.len() != lt.num_vars() {
        return Err(GkmError::Argument(format!("point has {} coordinates, {lt} needs {}", point.len(), lt.num_vars())));
    }
    if let Some(root) = lt.positive_roots().into_iter().find(|r| r.evaluate(point).is_zero()) {
        return Err(GkmError::Argument(format!("point lies on the hyperplane of {root}")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Independence {
    /// The localization matrix has this nonzero determinant at the point.
    Certified(Rational),
    Singular,
}

/// Determinant of `M[v][w] = q_w(v)` at a generic point; nonzero certifies
/// independence over the polynomial ring.
pub fn independence_certificate(
    g: &MomentGraph,
    classes: &[EquivariantClass],
    point: &[Rational],
) -> Result<Independence> {
    check_generic(g.lie_type(), point)?;
    if classes.len() != g.num_vertices() {
        return Err(GkmError::Argument("need one class per vertex".into()));
    }
    let mut m: Matrix = Vec::with_capacity(g.num_vertices());
    for v in 0..g.num_vertices() {
        m.push(classes.iter().map(|c| c.at(v).evaluate(point)).collect::<Result<Vec<_>>>()?);
    }
    let det = determinant(&m);
    Ok(if det.is_zero() { Independence::Singular } else { Independence::Certified(det) })
}

/// Ordinary Schubert coefficients of each class, as columns.
pub fn ordinary_matrix(g: &MomentGraph, basis: &SchubertBasis, classes: &[EquivariantClass]) -> Result<Matrix> {
    let columns = classes
        .iter()
        .map(|c| Ok(expand_in_basis(g, c, basis.classes())?.to_ordinary()))
        .collect::<Result<Vec<_>>>()?;
    let n = basis.classes().len();
    Ok((0..n).map(|r| columns.iter().map(|col| col[r].clone()).collect()).collect())
}

/// The matrix of `v` acting on ordinary cohomology in the Schubert basis.
pub fn action_matrix(g: &MomentGraph, basis: &SchubertBasis, action: Action, v: &WeylElement) -> Result<Matrix> {
    let images = basis.classes().iter().map(|p| act(g, action, v, p)).collect::<Result<Vec<_>>>()?;
    ordinary_matrix(g, basis, &images)
}

pub fn character(g: &MomentGraph, basis: &SchubertBasis, action: Action, v: &WeylElement) -> Result<Rational> {
    let m = action_matrix(g, basis, action, v)?;
    Ok(m.iter().enumerate().fold(Rational::zero(), |acc, (k, row)| acc + &row[k]))
}

/// Whether the ordinary action matrix of `v` is the identity.
pub fn acts_trivially(g: &MomentGraph, basis: &SchubertBasis, action: Action, v: &WeylElement) -> Result<bool> {
    let m = action_matrix(g, basis, action, v)?;
    Ok(m.iter()
        .enumerate()
        .all(|(r, row)| row.iter().enumerate().all(|(c, x)| if r == c { x.is_one() } else { x.is_zero() })))
}

/// Whether the ordinary images of the classes are linearly independent.
pub fn ordinary_images_independent(
    g: &MomentGraph,
    basis: &SchubertBasis,
    classes: &[EquivariantClass],
) -> Result<bool> {
    Ok(rank(&ordinary_matrix(g, basis, classes)?) == classes.len())
}

/// Trace of every group element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterVector {
    pub values: Vec<(WeylElement, Rational)>,
}

impl CharacterVector {
    pub fn value(&self, w: &WeylElement) -> Option<&Rational> {
        self.values.iter().find(|(x, _)| x == w).map(|(_, c)| c)
    }

    /// Checks constancy on conjugacy classes; returns a witness pair otherwise.
    pub fn check_class_function(&self) -> Result<()> {
        for (v, a) in &self.values {
            for (u, _) in &self.values {
                let conj = u.compose(v)?.compose(&u.inverse())?;
                let b = self.value(&conj).ok_or_else(|| GkmError::InvalidCharacter(format!("no value at {conj}")))?;
                if a != b {
                    return Err(GkmError::InvalidCharacter(format!("values differ at {v} and its conjugate {conj}")));
                }
            }
        }
        Ok(())
    }
}

/// The character of the action over all vertices, computed in parallel.
pub fn character_vector(g: &MomentGraph, basis: &SchubertBasis, action: Action) -> Result<CharacterVector> {
    let values = g
        .vertices()
        .par_iter()
        .map(|v| Ok((v.clone(), character(g, basis, action, v)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(CharacterVector { values })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub size: u64,
    pub representative: WeylElement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Irreducible {
    pub label: String,
    pub values: Vec<Rational>,
}

/// A character table of a symmetric group `S_n`, viewed as the Weyl group of
/// type `A_{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterTable {
    pub group: String,
    pub lie_type: LieType,
    pub classes: Vec<ConjugacyClass>,
    pub irreducibles: Vec<Irreducible>,
}

#[derive(Deserialize)]
struct RawClass {
    size: u64,
    representative: String,
}

#[derive(Deserialize)]
struct RawIrreducible {
    label: String,
    values: Vec<Value>,
}

#[derive(Deserialize)]
struct RawTable {
    group: String,
    classes: Vec<RawClass>,
    irreducibles: Vec<RawIrreducible>,
}

fn table_value(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|x| Rational::from_integer(x.into()))
            .ok_or_else(|| GkmError::InvalidTable(format!("non-integer number {n}; write rationals as strings"))),
        Value::String(s) => parse_rational(s).map_err(|e| GkmError::InvalidTable(e.to_string())),
        other => Err(GkmError::InvalidTable(format!("bad character value {other}"))),
    }
}

impl CharacterTable {
    pub fn s3() -> CharacterTable {
        CharacterTable::from_json(include_str!("../data/s3.json")).expect("shipped table is valid")
    }

    pub fn s4() -> CharacterTable {
        CharacterTable::from_json(include_str!("../data/s4.json")).expect("shipped table is valid")
    }

    /// The shipped table for `S_n`, if there is one.
    pub fn builtin(lt: LieType) -> Option<CharacterTable> {
        match (lt.family(), lt.rank()) {
            (Family::A, 2) => Some(CharacterTable::s3()),
            (Family::A, 3) => Some(CharacterTable::s4()),
            _ => None,
        }
    }

    /// Parses and validates a table: class sizes, representatives, and
    /// orthonormality of the rows under the class inner product.
    pub fn from_json(text: &str) -> Result<CharacterTable> {
        let raw: RawTable = serde_json::from_str(text).map_err(|e| GkmError::InvalidTable(format!("JSON: {e}")))?;
        let n: usize = raw
            .group
            .strip_prefix('S')
            .and_then(|d| d.parse().ok())
            .filter(|&n| n >= 2)
            .ok_or_else(|| GkmError::InvalidTable(format!("group {:?} is not S<n> with n >= 2", raw.group)))?;
        let lie_type = LieType::new(Family::A, n - 1).map_err(|e| GkmError::InvalidTable(e.to_string()))?;
        let classes = raw
            .classes
            .iter()
            .map(|c| {
                let representative = WeylElement::parse(lie_type, &c.representative)
                    .map_err(|e| GkmError::InvalidTable(e.to_string()))?;
                Ok(ConjugacyClass { size: c.size, representative })
            })
            .collect::<Result<Vec<_>>>()?;
        let irreducibles = raw
            .irreducibles
            .iter()
            .map(|r| {
                if r.values.len() != classes.len() {
                    return Err(GkmError::InvalidTable(format!("row {} has the wrong length", r.label)));
                }
                Ok(Irreducible {
                    label: r.label.clone(),
                    values: r.values.iter().map(table_value).collect::<Result<Vec<_>>>()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let table = CharacterTable { group: raw.group, lie_type, classes, irreducibles };
        table.validate()?;
        Ok(table)
    }

    fn order(&self) -> u64 {
        self.classes.iter().map(|c| c.size).sum()
    }

    fn validate(&self) -> Result<()> {
        let group = enumerate_group(self.lie_type).map_err(|e| GkmError::InvalidTable(e.to_string()))?;
        if self.order() != group.len() as u64 {
            return Err(GkmError::InvalidTable(format!(
                "class sizes sum to {}, the group has order {}",
                self.order(),
                group.len()
            )));
        }
        for c in &self.classes {
            let mut orbit: Vec<WeylElement> =
                group.iter().map(|u| u.compose_unchecked(&c.representative).compose_unchecked(&u.inverse())).collect();
            orbit.sort();
            orbit.dedup();
            if orbit.len() as u64 != c.size {
                return Err(GkmError::InvalidTable(format!(
                    "class of {} has size {}, not {}",
                    c.representative,
                    orbit.len(),
                    c.size
                )));
            }
        }
        for (a, x) in self.irreducibles.iter().enumerate() {
            for (b, y) in self.irreducibles.iter().enumerate().skip(a) {
                let expected = if a == b { Rational::one() } else { Rational::zero() };
                if self.inner(&x.values, &y.values) != expected {
                    return Err(GkmError::InvalidTable(format!(
                        "rows {} and {} are not orthonormal",
                        x.label, y.label
                    )));
                }
            }
        }
        Ok(())
    }

    fn inner(&self, a: &[Rational], b: &[Rational]) -> Rational {
        let sum = self
            .classes
            .iter()
            .zip(a.iter().zip(b))
            .fold(Rational::zero(), |acc, (c, (x, y))| acc + Rational::from_integer(c.size.into()) * x * y);
        sum / Rational::from_integer(self.order().into())
    }
}

/// Multiplicity of each irreducible in a character.
pub fn decompose_character(c: &CharacterVector, table: &CharacterTable) -> Result<Vec<(String, u64)>> {
    let values = table
        .classes
        .iter()
        .map(|k| {
            if k.representative.lie_type() != c.values.first().map(|(w, _)| w.lie_type()).unwrap_or(table.lie_type) {
                return Err(GkmError::InvalidCharacter("character and table are for different groups".into()));
            }
            c.value(&k.representative)
                .cloned()
                .ok_or_else(|| GkmError::InvalidCharacter(format!("no value at {}", k.representative)))
        })
        .collect::<Result<Vec<_>>>()?;
    table
        .irreducibles
        .iter()
        .map(|irr| {
            let m = table.inner(&values, &irr.values);
            if !m.is_integer() || m.is_negative() {
                return Err(GkmError::InvalidCharacter(format!(
                    "multiplicity of {} is {m}, not a nonnegative integer",
                    irr.label
                )));
            }
            let m: u64 =
                m.to_integer().try_into().map_err(|_| GkmError::InvalidCharacter("multiplicity overflow".into()))?;
            Ok((irr.label.clone(), m))
        })
        .collect()
}

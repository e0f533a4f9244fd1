//! The dot and star actions of the Weyl group on equivariant classes, the
//! two divided-difference operators, BGG operators on polynomials, and the
//! maps built from them.

use num_traits::Zero;

use crate::classes::{canonical_class_solve, top_class, EquivariantClass, Flow};
use crate::error::{GkmError, Result};
use crate::graph::MomentGraph;
use crate::poly::{LinearForm, Monomial, Polynomial, Rational};
use crate::weyl::{enumerate_group, reflections, Family, LieType, WeylElement};

/// `(w·p)(v) = w(p(w⁻¹v))`.
pub fn dot(g: &MomentGraph, w: &WeylElement, p: &EquivariantClass) -> Result<EquivariantClass> {
    p.check_graph(g)?;
    g.check_left_invariant(w)?;
    let w_inv = w.inverse();
    let values = g
        .vertices()
        .iter()
        .map(|v| {
            let src = g.require_vertex(&w_inv.compose(v)?)?;
            Ok(p.at(src).apply_weyl(w))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(p.with_values(values))
}

/// `(p*w)(v) = p(vw)`; defined on flag graphs only.
pub fn star(g: &MomentGraph, p: &EquivariantClass, w: &WeylElement) -> Result<EquivariantClass> {
    p.check_graph(g)?;
    if !g.is_flag() {
        return Err(GkmError::Unsupported(format!("the star action needs a flag graph, not {}", g.id())));
    }
    let values =
        g.vertices().iter().map(|v| Ok(p.at(g.require_vertex(&v.compose(w)?)?).clone())).collect::<Result<Vec<_>>>()?;
    Ok(p.with_values(values))
}

fn simple(lt: LieType, i: usize) -> Result<(WeylElement, LinearForm)> {
    Ok((WeylElement::simple_reflection(lt, i)?, lt.simple_root(i)?))
}

fn divide_or_invariant(num: &Polynomial, by: &LinearForm, what: &str) -> Result<Polynomial> {
    num.divide_exact(by).map_err(|e| GkmError::Invariant(format!("{what}: {e}")))
}

/// `δ_i p = (p − s_i·p) / α_i`.
pub fn delta(g: &MomentGraph, i: usize, p: &EquivariantClass) -> Result<EquivariantClass> {
    let (s, alpha) = simple(g.lie_type(), i)?;
    let moved = dot(g, &s, p)?;
    let values = p
        .values()
        .iter()
        .zip(moved.values())
        .map(|(a, b)| divide_or_invariant(&(a - b), &alpha, &format!("delta {i}")))
        .collect::<Result<Vec<_>>>()?;
    Ok(p.with_values(values))
}

/// `(∂_i p)(v) = (p(v) − p(v s_i)) / (−v(α_i))`; flag graphs only.
pub fn partial(g: &MomentGraph, i: usize, p: &EquivariantClass) -> Result<EquivariantClass> {
    let (s, alpha) = simple(g.lie_type(), i)?;
    let moved = star(g, p, &s)?;
    let values = g
        .vertices()
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let denom = -v.act_on_form(&alpha);
            divide_or_invariant(&(p.at(k) - moved.at(k)), &denom, &format!("partial {i}"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(p.with_values(values))
}

/// Schubert classes `p_w`, one per vertex, in vertex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchubertBasis {
    classes: Vec<EquivariantClass>,
}

impl SchubertBasis {
    pub fn from_classes(g: &MomentGraph, classes: Vec<EquivariantClass>) -> Result<Self> {
        if classes.len() != g.num_vertices() {
            return Err(GkmError::Argument("a basis needs one class per vertex".into()));
        }
        for c in &classes {
            c.check_graph(g)?;
        }
        Ok(SchubertBasis { classes })
    }

    pub fn classes(&self) -> &[EquivariantClass] {
        &self.classes
    }

    pub fn at(&self, v: usize) -> &EquivariantClass {
        &self.classes[v]
    }

    pub fn class(&self, g: &MomentGraph, w: &WeylElement) -> Result<&EquivariantClass> {
        Ok(&self.classes[g.require_vertex(w)?])
    }
}

fn require_flag(g: &MomentGraph) -> Result<()> {
    if g.is_flag() {
        Ok(())
    } else {
        Err(GkmError::Unsupported(format!("{} is not a flag graph", g.id())))
    }
}

/// Descends from the top class: each vertex is reached from a longer one by
/// `step(i, w) = Some(shorter)`, and its class is `op(i, p_longer)`.
fn descend(
    g: &MomentGraph,
    step: impl Fn(&WeylElement, &WeylElement) -> Result<WeylElement>,
    op: impl Fn(usize, &EquivariantClass) -> Result<EquivariantClass>,
) -> Result<SchubertBasis> {
    let lt = g.lie_type();
    let top = top_class(g)?;
    let mut classes: Vec<Option<EquivariantClass>> = vec![None; g.num_vertices()];
    let w0 = g.maximal_vertices()[0];
    classes[w0] = Some(top);
    for v in g.topological_order()?.into_iter().rev() {
        let Some(p) = classes[v].clone() else {
            return Err(GkmError::Invariant(format!("vertex {} not reached", g.vertices()[v])));
        };
        let w = &g.vertices()[v];
        let len = w.length();
        for i in 1..=lt.rank() {
            let s = WeylElement::simple_reflection(lt, i)?;
            let next = step(&s, w)?;
            if next.length() < len {
                let u = g.require_vertex(&next)?;
                if classes[u].is_none() {
                    classes[u] = Some(op(i, &p)?);
                }
            }
        }
    }
    SchubertBasis::from_classes(g, classes.into_iter().map(|c| c.expect("every vertex reached")).collect())
}

/// `p_{s_i w} = δ_i p_w` whenever `s_i w < w`.
pub fn basis_by_delta(g: &MomentGraph) -> Result<SchubertBasis> {
    require_flag(g)?;
    descend(g, |s, w| s.compose(w), |i, p| delta(g, i, p))
}

/// `p_{w s_i} = ∂_i p_w` whenever `w s_i < w`.
pub fn basis_by_partial(g: &MomentGraph) -> Result<SchubertBasis> {
    require_flag(g)?;
    descend(g, |s, w| w.compose(s), |i, p| partial(g, i, p))
}

/// Canonical flow-up classes of every vertex; works on any graph satisfying
/// the Palais-Smale condition.
pub fn basis_by_solve(g: &MomentGraph) -> Result<SchubertBasis> {
    let classes = g.vertices().iter().map(|v| canonical_class_solve(g, v, Flow::Up)).collect::<Result<Vec<_>>>()?;
    SchubertBasis::from_classes(g, classes)
}

/// The Schubert basis of a flag graph, computed by δ-descent, by ∂-descent
/// and by direct solving; all three must agree exactly.
pub fn generate_schubert_basis(g: &MomentGraph) -> Result<SchubertBasis> {
    let by_delta = basis_by_delta(g)?;
    let by_partial = basis_by_partial(g)?;
    let by_solve = basis_by_solve(g)?;
    for (v, w) in g.vertices().iter().enumerate() {
        if by_delta.at(v) != by_solve.at(v) {
            return Err(GkmError::Invariant(format!("delta descent and solve disagree at p_{w}")));
        }
        if by_partial.at(v) != by_solve.at(v) {
            return Err(GkmError::Invariant(format!("partial descent and solve disagree at p_{w}")));
        }
    }
    Ok(by_solve)
}

/// Compares `s_i·p_w` with `p_w − α_i p_{s_i w}` (or `p_w` when `s_i w > w`).
pub fn dot_formula_check(g: &MomentGraph, basis: &SchubertBasis, i: usize, w: &WeylElement) -> Result<bool> {
    let (s, alpha) = simple(g.lie_type(), i)?;
    let p_w = basis.class(g, w)?;
    let lhs = dot(g, &s, p_w)?;
    let sw = s.compose(w)?;
    let rhs = if sw.length() < w.length() {
        p_w.sub(&basis.class(g, &sw)?.scale_by_poly(&alpha.to_polynomial()))?
    } else {
        p_w.clone()
    };
    Ok(lhs == rhs)
}

/// `⟨a, β⟩ = (s_β a − a) / β`, an integer.
fn pairing(a: &LinearForm, reflection: &WeylElement, beta: &LinearForm) -> Result<Rational> {
    let moved = reflection.act_on_form(a);
    let diff = &moved.to_polynomial() - &a.to_polynomial();
    let q = diff.divide_exact(beta)?;
    if q.degree().unwrap_or(0) > 0 {
        return Err(GkmError::Invariant("pairing is not a constant".into()));
    }
    Ok(q.constant_term())
}

/// The right-hand side of the star formula:
/// `p_w − w(α_i) p_{w s_i} + Σ ⟨α_i, β⟩ p_{w s_i s_β}` over positive roots `β`
/// with `ℓ(w s_i s_β) = ℓ(w)`, when `w s_i < w`; `p_w` otherwise.
fn star_formula_rhs(g: &MomentGraph, basis: &SchubertBasis, i: usize, w: &WeylElement) -> Result<EquivariantClass> {
    let lt = g.lie_type();
    let (s, alpha) = simple(lt, i)?;
    let p_w = basis.class(g, w)?;
    let ws = w.compose(&s)?;
    if ws.length() > w.length() {
        return Ok(p_w.clone());
    }
    let coeff = w.act_on_form(&alpha).to_polynomial();
    let mut rhs = p_w.sub(&basis.class(g, &ws)?.scale_by_poly(&coeff))?;
    for r in reflections(lt) {
        let u = ws.compose(&r.element)?;
        if u.length() != w.length() {
            continue;
        }
        let c = pairing(&alpha, &r.element, &r.positive_root)?;
        if !c.is_zero() {
            rhs = rhs.add(&basis.class(g, &u)?.scale(&c))?;
        }
    }
    Ok(rhs)
}

/// Star formula check in type A, where the formula is stated.
pub fn star_formula_check(g: &MomentGraph, basis: &SchubertBasis, i: usize, w: &WeylElement) -> Result<bool> {
    if g.lie_type().family() != Family::A {
        return Err(GkmError::Unsupported("the star formula is checked in type A only".into()));
    }
    star_formula_check_general(g, basis, i, w)
}

/// The same comparison in any type, using the general coefficient rule.
/// No sign convention is guaranteed outside type A.
pub fn star_formula_check_general(g: &MomentGraph, basis: &SchubertBasis, i: usize, w: &WeylElement) -> Result<bool> {
    let (s, _) = simple(g.lie_type(), i)?;
    let lhs = star(g, basis.class(g, w)?, &s)?;
    Ok(lhs == star_formula_rhs(g, basis, i, w)?)
}

fn type_a_for(num_vars: usize) -> Result<LieType> {
    if num_vars < 2 {
        return Err(GkmError::Argument("BGG operators need at least two variables".into()));
    }
    LieType::new(Family::A, num_vars - 1)
}

/// `∂_i f = (f − s_i f) / (x_i − x_{i+1})`.
pub fn bgg_partial(i: usize, f: &Polynomial) -> Result<Polynomial> {
    let lt = type_a_for(f.num_vars())?;
    let (s, alpha) = simple(lt, i)?;
    divide_or_invariant(&(f - &f.apply_weyl(&s)), &alpha, "BGG operator")
}

/// The Schubert polynomial of a permutation, descending from
/// `x_1^{n-1} x_2^{n-2} ... x_{n-1}`.
pub fn schubert_polynomial(w: &WeylElement) -> Result<Polynomial> {
    let lt = w.lie_type();
    if lt.family() != Family::A {
        return Err(GkmError::Unsupported("Schubert polynomials are defined in type A".into()));
    }
    let n = lt.letters();
    // walk up by ascents to w0, then apply the operators on the way back
    let mut word = Vec::new();
    let mut u = w.clone();
    while let Some(i) = (1..n).find(|&i| u.apply(i) < u.apply(i + 1)) {
        u = u.compose(&WeylElement::simple_reflection(lt, i)?)?;
        word.push(i);
    }
    let exps: Vec<u16> = (0..n).map(|i| (n - 1 - i) as u16).collect();
    let mut f = Polynomial::from_terms(n, [(Monomial::from_exponents(&exps), Rational::from_integer(1.into()))]);
    for &i in word.iter().rev() {
        f = bgg_partial(i, &f)?;
    }
    Ok(f)
}

fn require_type_a_flag(g: &MomentGraph) -> Result<()> {
    require_flag(g)?;
    if g.lie_type().family() != Family::A {
        return Err(GkmError::Unsupported("Cadman's map is defined in type A".into()));
    }
    Ok(())
}

/// The average of all localizations of `p`.
pub fn cadman_xi(g: &MomentGraph, p: &EquivariantClass) -> Result<Polynomial> {
    require_type_a_flag(g)?;
    p.check_graph(g)?;
    let sum = p.values().iter().fold(Polynomial::zero(g.num_vars()), |acc, v| &acc + v);
    Ok(sum.scale(&Rational::new(1.into(), (g.num_vertices() as i64).into())))
}

/// `p ↦ (1/|W|) Σ_w w·p`.
pub fn average_f(g: &MomentGraph, p: &EquivariantClass) -> Result<EquivariantClass> {
    let group = enumerate_group(g.lie_type())?;
    let mut acc = EquivariantClass::zero(g);
    for w in &group {
        acc = acc.add(&dot(g, w, p)?)?;
    }
    Ok(acc.scale(&Rational::new(1.into(), (group.len() as i64).into())))
}

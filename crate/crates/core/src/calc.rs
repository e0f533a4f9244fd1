//! Structure constants, the Chevalley-Monk rule and its localization lemmas,
//! and Schubert expansion of polynomials modulo the ideal of positive-degree
//! symmetric polynomials.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::actions::{bgg_partial, SchubertBasis};
use crate::classes::expand_in_basis;
use crate::error::{GkmError, Result};
use crate::graph::MomentGraph;
use crate::poly::{LinearForm, Polynomial, Rational};
use crate::weyl::{bruhat_leq, enumerate_group, Family, LieType, Reflection, WeylElement};

/// Equivariant structure constants `c_uv^w` of `p_u · p_v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureTable {
    pub u: WeylElement,
    pub v: WeylElement,
    /// Nonzero entries in vertex order.
    pub entries: Vec<(WeylElement, Polynomial)>,
}

impl StructureTable {
    pub fn coefficient(&self, w: &WeylElement) -> Option<&Polynomial> {
        self.entries.iter().find(|(x, _)| x == w).map(|(_, c)| c)
    }

    /// Reduction to ordinary cohomology; zero entries are dropped.
    pub fn ordinary(&self) -> BTreeMap<WeylElement, Rational> {
        self.entries.iter().map(|(w, c)| (w.clone(), c.constant_term())).filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Degree bookkeeping and Bruhat support of every entry.
    pub fn check_invariants(&self) -> Result<()> {
        let total = self.u.length() + self.v.length();
        for (w, c) in &self.entries {
            let expected = total
                .checked_sub(w.length())
                .ok_or_else(|| GkmError::Invariant(format!("entry at {w} is longer than the product degree")))?;
            if !c.is_homogeneous_of_degree(expected as u32) {
                return Err(GkmError::Invariant(format!("entry at {w} has the wrong degree")));
            }
            if !bruhat_leq(&self.u, w)? || !bruhat_leq(&self.v, w)? {
                return Err(GkmError::Invariant(format!("entry at {w} is not above both factors")));
            }
        }
        Ok(())
    }
}

pub fn structure_constants(
    g: &MomentGraph,
    basis: &SchubertBasis,
    u: &WeylElement,
    v: &WeylElement,
) -> Result<StructureTable> {
    let product = basis.class(g, u)?.mul(basis.class(g, v)?)?;
    let expansion = expand_in_basis(g, &product, basis.classes()).map_err(|e| match e {
        GkmError::NotInSpan(at) => GkmError::Invariant(format!("product p_{u}·p_{v} left the span at {at}")),
        other => other,
    })?;
    let entries = expansion.nonzero().map(|(w, c)| (w.clone(), c.clone())).collect();
    Ok(StructureTable { u: u.clone(), v: v.clone(), entries })
}

fn require_type_a(lt: LieType) -> Result<()> {
    if lt.family() != Family::A {
        return Err(GkmError::Unsupported(format!("{lt}: this rule is stated in type A only")));
    }
    Ok(())
}

/// `(j, k)` with `j < k` for a type-A root `t_j − t_k`, 1-based.
fn transposition_of(root: &LinearForm) -> Result<(usize, usize)> {
    let c = root.coeffs();
    let j = c.iter().position(|&x| x == 1);
    let k = c.iter().position(|&x| x == -1);
    match (j, k) {
        (Some(j), Some(k)) if j < k && c.iter().filter(|&&x| x != 0).count() == 2 => Ok((j + 1, k + 1)),
        _ => Err(GkmError::Argument(format!("{root} is not a positive type-A root"))),
    }
}

/// The transposition `(jk)` as a permutation.
fn transposition(lt: LieType, j: usize, k: usize) -> Result<WeylElement> {
    let mut images: Vec<i32> = (1..=lt.letters() as i32).collect();
    images.swap(j - 1, k - 1);
    WeylElement::new(lt, &images)
}

/// The elements `w(jk)` with `ℓ(w(jk)) = ℓ(w) + 1` and `j ≤ i < k`, sorted.
pub fn chevalley_monk_terms(i: usize, w: &WeylElement) -> Result<Vec<WeylElement>> {
    let lt = w.lie_type();
    require_type_a(lt)?;
    lt.check_simple_index(i)?;
    let n = lt.letters();
    let len = w.length();
    let mut out = Vec::new();
    for j in 1..=i {
        for k in i + 1..=n {
            let x = w.compose(&transposition(lt, j, k)?)?;
            if x.length() == len + 1 {
                out.push(x);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Whether the ordinary product `p_{s_i} · p_w` is exactly the sum of the
/// Chevalley-Monk terms, each with coefficient 1.
pub fn monk_check(g: &MomentGraph, basis: &SchubertBasis, i: usize, w: &WeylElement) -> Result<bool> {
    let s = WeylElement::simple_reflection(g.lie_type(), i)?;
    let table = structure_constants(g, basis, &s, w)?;
    let ordinary = table.ordinary();
    let terms = chevalley_monk_terms(i, w)?;
    let one = Rational::from_integer(1.into());
    Ok(ordinary.len() == terms.len() && terms.iter().all(|x| ordinary.get(x) == Some(&one)))
}

/// Closed form of `w(p_{s_i}((jk)))`: `t_{w(j)} − t_{w(k)}` when
/// `j ≤ i < k`, zero otherwise.
pub fn reflection_localization(i: usize, r: &Reflection, w: &WeylElement) -> Result<Polynomial> {
    let lt = w.lie_type();
    require_type_a(lt)?;
    lt.check_simple_index(i)?;
    let (j, k) = transposition_of(&r.positive_root)?;
    if j <= i && i < k {
        Ok(w.act_on_form(&r.positive_root).to_polynomial())
    } else {
        Ok(Polynomial::zero(lt.num_vars()))
    }
}

/// `p_w(w r) · w(β) = p_{wr}(wr)` for `r = s_β` with `ℓ(wr) = ℓ(w) + 1`.
/// Returns `None` when the length precondition fails.
pub fn localization_ratio_check(
    g: &MomentGraph,
    basis: &SchubertBasis,
    w: &WeylElement,
    r: &Reflection,
) -> Result<Option<bool>> {
    let wr = w.compose(&r.element)?;
    if wr.length() != w.length() + 1 {
        return Ok(None);
    }
    let at = g.require_vertex(&wr)?;
    let lhs = basis.class(g, w)?.at(at) * &w.act_on_form(&r.positive_root).to_polynomial();
    Ok(Some(&lhs == basis.class(g, &wr)?.at(at)))
}

/// Coefficients of a polynomial in the Schubert-polynomial basis of the
/// coinvariant ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchubertExpansion {
    /// Nonzero coefficients, keyed by permutation.
    pub coefficients: BTreeMap<WeylElement, Rational>,
    /// Set when `f` had homogeneous parts above the top degree; those parts
    /// lie in the ideal and were dropped.
    pub dropped_high_degree: bool,
}

impl SchubertExpansion {
    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }
}

/// Expands `f` in `n = f.num_vars()` variables modulo the ideal generated by
/// the positive-degree symmetric polynomials.
pub fn schubert_expand(f: &Polynomial) -> Result<SchubertExpansion> {
    let n = f.num_vars();
    if n < 2 {
        return Err(GkmError::Argument("Schubert expansion needs at least two variables".into()));
    }
    let lt = LieType::new(Family::A, n - 1)?;
    let top = (n * (n - 1) / 2) as u32;
    let mut coefficients = BTreeMap::new();
    let mut parts: BTreeMap<u32, Polynomial> = BTreeMap::new();
    for w in enumerate_group(lt)? {
        let d = w.length() as u32;
        let part = parts.entry(d).or_insert_with(|| f.homogeneous_part(d)).clone();
        if part.is_zero() {
            continue;
        }
        let mut h = part;
        for &a in w.reduced_word().iter().rev() {
            h = bgg_partial(a, &h)?;
        }
        let c = h.constant_term();
        if !c.is_zero() {
            coefficients.insert(w, c);
        }
    }
    let dropped_high_degree = f.terms().any(|(m, _)| m.degree() > top);
    Ok(SchubertExpansion { coefficients, dropped_high_degree })
}

/// Equality in the coinvariant ring.
pub fn mod_i_equal(f: &Polynomial, g: &Polynomial) -> Result<bool> {
    Ok(schubert_expand(&f.arith(crate::poly::ArithKind::Sub, g)?)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::{generate_schubert_basis, schubert_polynomial};
    use crate::graph::build_flag_graph;
    use crate::poly::rat;
    use crate::weyl::reflections;

    fn setup(t: &str) -> (MomentGraph, SchubertBasis) {
        let g = build_flag_graph(t.parse().unwrap()).unwrap();
        let b = generate_schubert_basis(&g).unwrap();
        (g, b)
    }

    fn el(lt: LieType, s: &str) -> WeylElement {
        WeylElement::parse(lt, s).unwrap()
    }

    #[test]
    fn a2_products() {
        let (g, b) = setup("A2");
        let lt = g.lie_type();
        let s1 = el(lt, "s1");
        let t = structure_constants(&g, &b, &s1, &s1).unwrap();
        let rendered: Vec<(String, String)> = t.entries.iter().map(|(w, c)| (w.to_string(), c.to_string())).collect();
        assert_eq!(rendered, vec![("[2,1,3]".into(), "t1 - t2".into()), ("[3,1,2]".into(), "1".into())]);
        t.check_invariants().unwrap();
        for v in g.vertices() {
            let t = structure_constants(&g, &b, &el(lt, "e"), v).unwrap();
            assert_eq!(t.entries, vec![(v.clone(), Polynomial::one(3))]);
        }
        let t = structure_constants(&g, &b, &s1, &el(lt, "s2")).unwrap();
        let ord = t.ordinary();
        assert_eq!(ord.len(), 2);
        assert!(ord.values().all(|c| c == &rat(1)));
        assert!(ord.keys().all(|w| w.length() == 2));
    }

    #[test]
    fn structure_tables_obey_invariants_on_a3() {
        let (g, b) = setup("A3");
        for u in g.vertices().iter().step_by(3) {
            for v in g.vertices() {
                structure_constants(&g, &b, u, v).unwrap().check_invariants().unwrap();
            }
        }
    }

    #[test]
    fn monk_terms() {
        let lt: LieType = "A2".parse().unwrap();
        assert_eq!(chevalley_monk_terms(1, &el(lt, "s1")).unwrap(), vec![el(lt, "[3,1,2]")]);
        assert!(chevalley_monk_terms(2, &el(lt, "w0")).unwrap().is_empty());
        assert_eq!(chevalley_monk_terms(1, &el(lt, "e")).unwrap(), vec![el(lt, "s1")]);
        let c2: LieType = "C2".parse().unwrap();
        assert!(chevalley_monk_terms(1, &WeylElement::identity(c2)).is_err());
    }

    #[test]
    fn monk_rule_matches_products() {
        for t in ["A2", "A3"] {
            let (g, b) = setup(t);
            for w in g.vertices() {
                for i in 1..=g.lie_type().rank() {
                    assert!(monk_check(&g, &b, i, w).unwrap(), "{t} i={i} w={w}");
                }
            }
        }
    }

    #[test]
    fn reflection_localizations() {
        let (g, b) = setup("A3");
        let lt = g.lie_type();
        let refl = reflections(lt);
        let r13 = refl.iter().find(|r| r.positive_root.to_string() == "t1 - t3").unwrap();
        let e = WeylElement::identity(lt);
        assert_eq!(reflection_localization(1, r13, &e).unwrap().to_string(), "t1 - t3");
        let r12 = refl.iter().find(|r| r.positive_root.to_string() == "t1 - t2").unwrap();
        assert_eq!(reflection_localization(1, r12, &e).unwrap().to_string(), "t1 - t2");
        let r34 = refl.iter().find(|r| r.positive_root.to_string() == "t3 - t4").unwrap();
        assert!(reflection_localization(1, r34, &e).unwrap().is_zero());
        for i in 1..=3 {
            let p = b.class(&g, &WeylElement::simple_reflection(lt, i).unwrap()).unwrap();
            for r in &refl {
                let local = p.at(g.require_vertex(&r.element).unwrap());
                for w in g.vertices() {
                    assert_eq!(reflection_localization(i, r, w).unwrap(), local.apply_weyl(w));
                }
            }
        }
    }

    #[test]
    fn localization_ratios() {
        let (g, b) = setup("A3");
        let mut checked = 0;
        for w in g.vertices() {
            for r in reflections(g.lie_type()) {
                if let Some(ok) = localization_ratio_check(&g, &b, w, &r).unwrap() {
                    assert!(ok, "w={w} r={}", r.element);
                    checked += 1;
                }
            }
        }
        assert!(checked > 0);
        let (g, b) = setup("A2");
        let r13 = reflections(g.lie_type()).into_iter().find(|r| r.positive_root.to_string() == "t1 - t3").unwrap();
        assert_eq!(localization_ratio_check(&g, &b, &el(g.lie_type(), "s1"), &r13).unwrap(), Some(true));
        assert_eq!(localization_ratio_check(&g, &b, &el(g.lie_type(), "w0"), &r13).unwrap(), None);
    }

    #[test]
    fn schubert_expansions() {
        let x = |s: &str| Polynomial::parse(3, s).unwrap();
        let lt: LieType = "A2".parse().unwrap();
        let e = schubert_expand(&x("x1^2")).unwrap();
        assert_eq!(e.coefficients, BTreeMap::from([(el(lt, "[3,1,2]"), rat(1))]));
        assert!(mod_i_equal(&x("x1 + x2 + x3"), &x("0")).unwrap());
        assert!(mod_i_equal(&x("x1"), &x("(2*x1 - x2 - x3)/3")).unwrap());
        assert!(!mod_i_equal(&x("x1"), &x("x2")).unwrap());
        assert!(mod_i_equal(&x("x1*x2 + 5"), &x("x1*x2 + 5")).unwrap());
        assert!(mod_i_equal(&x("x1*x2*x3"), &x("0")).unwrap());
        let high = schubert_expand(&x("x1^4 + x1")).unwrap();
        assert!(high.dropped_high_degree);
        for n in 2..=4 {
            let lt = LieType::new(Family::A, n - 1).unwrap();
            for w in enumerate_group(lt).unwrap() {
                let e = schubert_expand(&schubert_polynomial(&w).unwrap()).unwrap();
                assert_eq!(e.coefficients, BTreeMap::from([(w.clone(), rat(1))]));
                assert!(!e.dropped_high_degree);
            }
        }
    }

    #[test]
    fn symmetric_ideal_is_annihilated() {
        // products of elementary symmetric polynomials with anything vanish
        let x = |s: &str| Polynomial::parse(4, s).unwrap();
        let e2 = x("x1*x2 + x1*x3 + x1*x4 + x2*x3 + x2*x4 + x3*x4");
        for f in ["x1", "x2^2 - x3", "x1*x4 + 7", "x3^3"] {
            assert!(schubert_expand(&(&e2 * &x(f))).unwrap().is_zero(), "{f}");
        }
    }
}

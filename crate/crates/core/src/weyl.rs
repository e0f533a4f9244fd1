//! Weyl groups of the classical types as (signed) permutations.
//!
//! Type `A_n` acts on `n + 1` letters by ordinary permutations. Types `B_n`,
//! `C_n` and `D_n` act on `n` letters by signed permutations; `D_n` keeps only
//! the elements with an even number of sign changes. An element is stored in
//! one-line notation: entry `i` is `±w(i)`, and `w` acts on the variables by
//! `t_i -> ±t_{|w(i)|}`.

use std::cmp::Ordering;
use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use smallvec::SmallVec;

use crate::error::{GkmError, Result};
use crate::poly::LinearForm;

/// Default bound on group orders, overridable through `GKM_MAX_GROUP_ORDER`.
pub const DEFAULT_MAX_GROUP_ORDER: u128 = 1000;

/// Reads the group order bound from the environment, falling back to the default.
pub fn max_group_order() -> u128 {
    std::env::var("GKM_MAX_GROUP_ORDER").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_MAX_GROUP_ORDER)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LieType {
    family: Family,
    rank: u8,
}

impl LieType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let min = if family == Family::D { 2 } else { 1 };
        if rank < min {
            return Err(GkmError::Config(format!("rank {rank} is invalid for family {family:?} (minimum {min})")));
        }
        // signed images are stored as i8
        if rank > 100 {
            return Err(GkmError::Config(format!("rank {rank} is too large")));
        }
        Ok(LieType { family, rank: rank as u8 })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    /// Number of letters permuted, which is also the number of variables `t_i`.
    pub fn letters(&self) -> usize {
        match self.family {
            Family::A => self.rank as usize + 1,
            _ => self.rank as usize,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.letters()
    }

    pub fn is_signed(&self) -> bool {
        self.family != Family::A
    }

    /// `|W|`, saturating at `u128::MAX`.
    pub fn group_order(&self) -> u128 {
        let n = self.letters() as u128;
        let fact = (1..=n).fold(1u128, |acc, k| acc.saturating_mul(k));
        match self.family {
            Family::A => fact,
            Family::B | Family::C => fact.saturating_mul(1u128 << n.min(127)),
            Family::D => fact.saturating_mul(1u128 << (n - 1).min(127)),
        }
    }

    /// Positive roots in a fixed order: `t_i - t_j`, then `t_i + t_j`, then the
    /// short or long roots on single coordinates.
    pub fn positive_roots(&self) -> Vec<LinearForm> {
        let n = self.letters();
        let mut roots = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                roots.push(LinearForm::difference(n, i, j));
            }
        }
        if self.is_signed() {
            for i in 0..n {
                for j in i + 1..n {
                    let mut c = vec![0; n];
                    c[i] = 1;
                    c[j] = 1;
                    roots.push(LinearForm::new(c));
                }
            }
            let scale = match self.family {
                Family::B => 1,
                Family::C => 2,
                _ => 0,
            };
            if scale != 0 {
                for i in 0..n {
                    let mut c = vec![0; n];
                    c[i] = scale;
                    roots.push(LinearForm::new(c));
                }
            }
        }
        roots
    }

    pub fn simple_root(&self, i: usize) -> Result<LinearForm> {
        self.check_simple_index(i)?;
        let n = self.letters();
        if i < self.rank() || self.family == Family::A {
            return Ok(LinearForm::difference(n, i - 1, i));
        }
        let mut c = vec![0; n];
        match self.family {
            Family::B => c[n - 1] = 1,
            Family::C => c[n - 1] = 2,
            Family::D => {
                c[n - 2] = 1;
                c[n - 1] = 1;
            }
            Family::A => unreachable!(),
        }
        Ok(LinearForm::new(c))
    }

    pub fn check_simple_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.rank() {
            return Err(GkmError::Argument(format!("simple index {i} out of range 1..={} for {self}", self.rank())));
        }
        Ok(())
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for LieType {
    type Err = GkmError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            _ => return Err(GkmError::Parse(format!("unknown Lie type '{s}'"))),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| GkmError::Parse(format!("bad rank in Lie type '{s}'")))?;
        LieType::new(family, rank)
    }
}

pub(crate) type Images = SmallVec<[i8; 8]>;

/// An element of a classical Weyl group in signed one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    lie_type: LieType,
    images: Images,
}

impl WeylElement {
    pub fn new(lie_type: LieType, images: &[i32]) -> Result<Self> {
        let n = lie_type.letters();
        if images.len() != n {
            return Err(GkmError::Argument(format!("{lie_type} elements need {n} entries, got {}", images.len())));
        }
        let mut seen = vec![false; n];
        let mut negatives = 0;
        for &x in images {
            let a = x.unsigned_abs() as usize;
            if a == 0 || a > n || seen[a - 1] {
                return Err(GkmError::Argument(format!("{images:?} is not a signed permutation of 1..{n}")));
            }
            seen[a - 1] = true;
            if x < 0 {
                negatives += 1;
            }
        }
        match lie_type.family() {
            Family::A if negatives > 0 => {
                return Err(GkmError::Argument(format!("type A elements cannot carry signs: {images:?}")))
            }
            Family::D if negatives % 2 == 1 => {
                return Err(GkmError::Argument(format!("type D elements need an even number of signs: {images:?}")))
            }
            _ => {}
        }
        Ok(WeylElement { lie_type, images: images.iter().map(|&x| x as i8).collect() })
    }

    pub fn identity(lie_type: LieType) -> Self {
        let images = (1..=lie_type.letters() as i8).collect();
        WeylElement { lie_type, images }
    }

    /// The element of maximal length.
    pub fn longest(lie_type: LieType) -> Self {
        let n = lie_type.letters();
        let images: Images = match lie_type.family() {
            Family::A => (0..n).map(|i| (n - i) as i8).collect(),
            Family::D if n % 2 == 1 => {
                // -1 is not in W(D_n) for odd n
                let mut v: Images = (1..=n as i8).map(|x| -x).collect();
                v[n - 1] = n as i8;
                v
            }
            _ => (1..=n as i8).map(|x| -x).collect(),
        };
        WeylElement { lie_type, images }
    }

    pub fn simple_reflection(lie_type: LieType, i: usize) -> Result<Self> {
        lie_type.check_simple_index(i)?;
        let root = lie_type.simple_root(i)?;
        Ok(reflection_for_root(lie_type, &root))
    }

    /// Product `s_{i_1} s_{i_2} ... s_{i_k}` of simple reflections.
    pub fn from_word(lie_type: LieType, word: &[usize]) -> Result<Self> {
        let mut w = WeylElement::identity(lie_type);
        for &i in word {
            w = w.compose(&WeylElement::simple_reflection(lie_type, i)?)?;
        }
        Ok(w)
    }

    /// Parses one-line notation (`[2,1,3]`), a word in simple reflections
    /// (`s1 s2`, `s1s2`, `s1*s2`), or `e` / `id` / `w0`.
    pub fn parse(lie_type: LieType, s: &str) -> Result<Self> {
        let t = s.trim();
        if t.starts_with('[') {
            let inner = t
                .strip_prefix('[')
                .and_then(|r| r.strip_suffix(']'))
                .ok_or_else(|| GkmError::Parse(format!("unterminated element '{s}'")))?;
            let images = inner
                .split(',')
                .map(|x| x.trim().parse::<i32>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| GkmError::Parse(format!("bad one-line notation '{s}'")))?;
            return WeylElement::new(lie_type, &images);
        }
        match t {
            "" | "e" | "id" => return Ok(WeylElement::identity(lie_type)),
            "w0" => return Ok(WeylElement::longest(lie_type)),
            _ => {}
        }
        let mut word = Vec::new();
        let cleaned: String = t.chars().map(|c| if c == '*' { ' ' } else { c }).collect();
        for token in cleaned.split_whitespace() {
            let parts: Vec<&str> = token.split('s').collect();
            if parts.len() < 2 || !parts[0].is_empty() {
                return Err(GkmError::Parse(format!("bad generator word '{s}'")));
            }
            for p in &parts[1..] {
                let i: usize = p.parse().map_err(|_| GkmError::Parse(format!("bad generator word '{s}'")))?;
                word.push(i);
            }
        }
        WeylElement::from_word(lie_type, &word)
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    /// Signed one-line images, 1-based values.
    pub fn images(&self) -> impl Iterator<Item = i32> + '_ {
        self.images.iter().map(|&x| x as i32)
    }

    pub(crate) fn raw_images(&self) -> &[i8] {
        &self.images
    }

    /// `±w(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> i32 {
        self.images[i - 1] as i32
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x as usize == i + 1)
    }

    fn check_same_type(&self, other: &WeylElement) -> Result<()> {
        if self.lie_type != other.lie_type {
            return Err(GkmError::TypeMismatch(format!(
                "cannot combine elements of {} and {}",
                self.lie_type, other.lie_type
            )));
        }
        Ok(())
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &WeylElement) -> Result<WeylElement> {
        self.check_same_type(other)?;
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &WeylElement) -> WeylElement {
        let images = other
            .images
            .iter()
            .map(|&x| {
                let y = self.images[x.unsigned_abs() as usize - 1];
                if x < 0 {
                    -y
                } else {
                    y
                }
            })
            .collect();
        WeylElement { lie_type: self.lie_type, images }
    }

    pub fn inverse(&self) -> WeylElement {
        let mut images: Images = SmallVec::from_elem(0, self.images.len());
        for (i, &x) in self.images.iter().enumerate() {
            let target = x.unsigned_abs() as usize - 1;
            images[target] = if x < 0 { -(i as i8 + 1) } else { i as i8 + 1 };
        }
        WeylElement { lie_type: self.lie_type, images }
    }

    /// Number of positive roots sent to negative roots by `self⁻¹`.
    pub fn length(&self) -> usize {
        let inv = self.inverse();
        self.lie_type.positive_roots().iter().filter(|r| inv.act_on_form(r).is_negative()).count()
    }

    /// Linear extension of `t_i -> ±t_{|w(i)|}`.
    pub fn act_on_form(&self, f: &LinearForm) -> LinearForm {
        let n = self.images.len();
        assert_eq!(f.num_vars(), n, "linear form has the wrong number of variables");
        let mut out = vec![0i64; n];
        for (i, &c) in f.coeffs().iter().enumerate() {
            if c == 0 {
                continue;
            }
            let x = self.images[i];
            let target = x.unsigned_abs() as usize - 1;
            out[target] += if x < 0 { -c } else { c };
        }
        LinearForm::new(out)
    }

    /// `(length, images)`; the canonical ordering key.
    pub fn canonical_key(&self) -> (usize, Images) {
        (self.length(), self.images.clone())
    }

    /// One reduced word `[i_1, ..., i_k]` with `self = s_{i_1} ... s_{i_k}`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let gens: Vec<WeylElement> = (1..=self.lie_type.rank())
            .map(|i| WeylElement::simple_reflection(self.lie_type, i).expect("valid index"))
            .collect();
        let mut word = Vec::new();
        let mut w = self.clone();
        let mut len = w.length();
        while len > 0 {
            let (i, next) = gens
                .iter()
                .enumerate()
                .map(|(i, s)| (i + 1, s.compose_unchecked(&w)))
                .find(|(_, sw)| sw.length() < len)
                .expect("a non-identity element has a left descent");
            word.push(i);
            w = next;
            len -= 1;
        }
        word
    }
}

impl Ord for WeylElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lie_type
            .cmp(&other.lie_type)
            .then_with(|| self.length().cmp(&other.length()))
            .then_with(|| self.images.cmp(&other.images))
    }
}

impl PartialOrd for WeylElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, x) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

/// A reflection together with the positive root it negates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Reflection {
    pub element: WeylElement,
    pub positive_root: LinearForm,
}

fn reflection_for_root(lie_type: LieType, root: &LinearForm) -> WeylElement {
    let mut images: Images = (1..=lie_type.letters() as i8).collect();
    let support: Vec<(usize, i64)> =
        root.coeffs().iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c)).collect();
    match support.as_slice() {
        [(i, _)] => images[*i] = -images[*i],
        [(i, a), (j, b)] if a == b => {
            images[*i] = -(*j as i8 + 1);
            images[*j] = -(*i as i8 + 1);
        }
        [(i, _), (j, _)] => images.swap(*i, *j),
        _ => panic!("not a classical root: {root}"),
    }
    WeylElement { lie_type, images }
}

/// The simple reflections with their simple roots.
pub fn generators(lie_type: LieType) -> Vec<(WeylElement, LinearForm)> {
    (1..=lie_type.rank())
        .map(|i| {
            let root = lie_type.simple_root(i).expect("valid index");
            (reflection_for_root(lie_type, &root), root)
        })
        .collect()
}

/// One reflection per positive root, in the order of [`LieType::positive_roots`].
pub fn reflections(lie_type: LieType) -> Vec<Reflection> {
    lie_type
        .positive_roots()
        .into_iter()
        .map(|root| Reflection { element: reflection_for_root(lie_type, &root), positive_root: root })
        .collect()
}

/// All group elements in canonical (length, lexicographic) order.
pub fn enumerate_group(lie_type: LieType) -> Result<Vec<WeylElement>> {
    enumerate_group_bounded(lie_type, max_group_order())
}

pub fn enumerate_group_bounded(lie_type: LieType, max_order: u128) -> Result<Vec<WeylElement>> {
    let order = lie_type.group_order();
    if order > max_order {
        return Err(GkmError::Resource(format!("{lie_type} has order {order}, above the bound {max_order}")));
    }
    let n = lie_type.letters();
    let mut perms: Vec<Vec<i8>> = Vec::with_capacity(order as usize);
    let mut current: Vec<i8> = (1..=n as i8).collect();
    permutations(&mut current, 0, &mut perms);
    let mut out = Vec::with_capacity(order as usize);
    for p in perms {
        if !lie_type.is_signed() {
            out.push(WeylElement { lie_type, images: p.into_iter().collect() });
            continue;
        }
        for mask in 0u32..(1u32 << n) {
            if lie_type.family() == Family::D && mask.count_ones() % 2 == 1 {
                continue;
            }
            let images = p.iter().enumerate().map(|(k, &x)| if mask >> k & 1 == 1 { -x } else { x }).collect();
            out.push(WeylElement { lie_type, images });
        }
    }
    debug_assert_eq!(out.len() as u128, order);
    out.sort_by_cached_key(|w| w.canonical_key());
    Ok(out)
}

fn permutations(current: &mut Vec<i8>, k: usize, out: &mut Vec<Vec<i8>>) {
    if k == current.len() {
        out.push(current.clone());
        return;
    }
    for j in k..current.len() {
        current.swap(k, j);
        permutations(current, k + 1, out);
        current.swap(k, j);
    }
}

/// Bruhat order: `u <= w` iff a chain of length-decreasing reflection moves
/// `w -> s_α w -> ...` reaches `u`.
pub fn bruhat_leq(u: &WeylElement, w: &WeylElement) -> Result<bool> {
    u.check_same_type(w)?;
    let target_len = u.length();
    let refl = reflections(u.lie_type);
    let mut seen: HashSet<WeylElement> = HashSet::new();
    let mut queue = VecDeque::new();
    queue.push_back((w.clone(), w.length()));
    seen.insert(w.clone());
    while let Some((x, len)) = queue.pop_front() {
        if len == target_len {
            if &x == u {
                return Ok(true);
            }
            continue;
        }
        if len < target_len {
            continue;
        }
        for r in &refl {
            let y = r.element.compose_unchecked(&x);
            let ylen = y.length();
            if ylen < len && ylen >= target_len && seen.insert(y.clone()) {
                queue.push_back((y, ylen));
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lt(s: &str) -> LieType {
        s.parse().unwrap()
    }

    fn el(t: &str, s: &str) -> WeylElement {
        WeylElement::parse(lt(t), s).unwrap()
    }

    #[test]
    fn invalid_ranks_are_rejected() {
        assert!(LieType::new(Family::D, 1).is_err());
        assert!(LieType::new(Family::A, 0).is_err());
        assert!("X3".parse::<LieType>().is_err());
        assert_eq!(lt("C2").to_string(), "C2");
    }

    #[test]
    fn simple_roots_match_tables() {
        let a2 = generators(lt("A2"));
        assert_eq!(a2[0].1.to_string(), "t1 - t2");
        assert_eq!(a2[1].1.to_string(), "t2 - t3");
        assert_eq!(a2[0].0.to_string(), "[2,1,3]");
        let c2 = generators(lt("C2"));
        assert_eq!(c2[1].1.to_string(), "2*t2");
        assert_eq!(c2[1].0.to_string(), "[1,-2]");
        let b2 = generators(lt("B2"));
        assert_eq!(b2[0].1.to_string(), "t1 - t2");
        assert_eq!(b2[1].1.to_string(), "t2");
        let d3 = generators(lt("D3"));
        assert_eq!(d3[2].1.to_string(), "t2 + t3");
        assert_eq!(d3[2].0.to_string(), "[1,-3,-2]");
    }

    #[test]
    fn compose_and_inverse() {
        let s1 = el("A2", "s1");
        let s2 = el("A2", "s2");
        let c = s1.compose(&s2).unwrap();
        // the 3-cycle 1 -> 2 -> 3 -> 1
        assert_eq!(c.to_string(), "[2,3,1]");
        assert!(s1.compose(&s1).unwrap().is_identity());
        let e = WeylElement::identity(lt("A2"));
        assert_eq!(c.compose(&e).unwrap(), c);
        assert_eq!(c.inverse(), s2.compose(&s1).unwrap());
        assert_eq!(s1.inverse(), s1);
        assert!(e.inverse().is_identity());
        assert!(s1.compose(&el("C2", "s1")).is_err());
    }

    #[test]
    fn lengths() {
        assert_eq!(el("A2", "e").length(), 0);
        assert_eq!(el("A2", "s1 s2 s1").length(), 3);
        assert_eq!(el("A2", "s1 s2 s1").to_string(), "[3,2,1]");
        assert_eq!(el("C2", "s2 s1 s2 s1").length(), 4);
        assert_eq!(el("C2", "s2 s1 s2 s1"), WeylElement::longest(lt("C2")));
        for t in ["A3", "B3", "C3", "D3", "D4"] {
            let l = lt(t);
            assert_eq!(WeylElement::longest(l).length(), l.positive_roots().len(), "{t}");
        }
    }

    #[test]
    fn group_orders() {
        assert_eq!(enumerate_group(lt("A2")).unwrap().len(), 6);
        assert_eq!(enumerate_group(lt("C2")).unwrap().len(), 8);
        assert_eq!(enumerate_group(lt("A3")).unwrap().len(), 24);
        assert_eq!(enumerate_group(lt("D3")).unwrap().len(), 24);
        assert!(matches!(enumerate_group_bounded(lt("A6"), 1000), Err(GkmError::Resource(_))));
        let g = enumerate_group(lt("A2")).unwrap();
        assert!(g[0].is_identity());
        let lens: Vec<usize> = g.iter().map(|w| w.length()).collect();
        assert_eq!(lens, vec![0, 1, 1, 2, 2, 3]);
    }

    #[test]
    fn reflection_roots() {
        let roots: Vec<String> = reflections(lt("A2")).iter().map(|r| r.positive_root.to_string()).collect();
        assert_eq!(roots, vec!["t1 - t2", "t1 - t3", "t2 - t3"]);
        let roots: Vec<String> = reflections(lt("C2")).iter().map(|r| r.positive_root.to_string()).collect();
        assert_eq!(roots, vec!["t1 - t2", "t1 + t2", "2*t1", "2*t2"]);
        let roots: Vec<String> = reflections(lt("B2")).iter().map(|r| r.positive_root.to_string()).collect();
        assert_eq!(roots, vec!["t1 - t2", "t1 + t2", "t1", "t2"]);
        for t in ["A3", "B3", "C3", "D4"] {
            for r in reflections(lt(t)) {
                assert_eq!(r.element.act_on_form(&r.positive_root), -r.positive_root.clone());
                assert!(!r.element.is_identity());
                assert!(r.element.compose(&r.element).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn action_on_forms() {
        let s1 = el("A2", "s1");
        let f = LinearForm::difference(3, 0, 2);
        assert_eq!(s1.act_on_form(&f).to_string(), "t2 - t3");
        assert!(s1.act_on_form(&LinearForm::zero(3)).is_zero());
        let s2 = el("C2", "s2");
        assert_eq!(s2.act_on_form(&LinearForm::new(vec![0, 2])).to_string(), "-2*t2");
    }

    #[test]
    fn length_matches_minimal_words() {
        for t in ["A2", "A3", "B2", "C2", "B3", "D3"] {
            let l = lt(t);
            // breadth-first search over words gives the minimal length
            let gens = generators(l);
            let mut dist = std::collections::HashMap::new();
            let e = WeylElement::identity(l);
            dist.insert(e.clone(), 0usize);
            let mut queue = VecDeque::from([e]);
            while let Some(w) = queue.pop_front() {
                let d = dist[&w];
                for (s, _) in &gens {
                    let x = w.compose(s).unwrap();
                    if !dist.contains_key(&x) {
                        dist.insert(x.clone(), d + 1);
                        queue.push_back(x);
                    }
                }
            }
            assert_eq!(dist.len() as u128, l.group_order());
            for (w, d) in dist {
                assert_eq!(w.length(), d, "{t} {w}");
                assert_eq!(WeylElement::from_word(l, &w.reduced_word()).unwrap(), w);
            }
        }
    }

    #[test]
    fn length_changes_by_one_under_simple_reflections() {
        for t in ["A3", "B2", "C2"] {
            let l = lt(t);
            for w in enumerate_group(l).unwrap() {
                for (s, _) in generators(l) {
                    let a = s.compose(&w).unwrap().length() as i64;
                    assert_eq!((a - w.length() as i64).abs(), 1);
                }
            }
        }
    }

    #[test]
    fn composition_is_associative() {
        for t in ["A2", "C2"] {
            let g = enumerate_group(lt(t)).unwrap();
            for a in &g {
                for b in &g {
                    for c in &g {
                        let l = a.compose(b).unwrap().compose(c).unwrap();
                        let r = a.compose(&b.compose(c).unwrap()).unwrap();
                        assert_eq!(l, r);
                    }
                }
            }
        }
    }

    #[test]
    fn bruhat_examples_and_partial_order() {
        let e = el("A2", "e");
        for w in enumerate_group(lt("A2")).unwrap() {
            assert!(bruhat_leq(&e, &w).unwrap());
        }
        assert!(bruhat_leq(&el("A2", "s1"), &el("A2", "s1 s2")).unwrap());
        assert!(!bruhat_leq(&el("A2", "s1"), &el("A2", "s2")).unwrap());

        let g = enumerate_group(lt("A3")).unwrap();
        let leq: Vec<Vec<bool>> = g.iter().map(|u| g.iter().map(|w| bruhat_leq(u, w).unwrap()).collect()).collect();
        for a in 0..g.len() {
            assert!(leq[a][a]);
            for b in 0..g.len() {
                if a != b && leq[a][b] {
                    assert!(!leq[b][a]);
                }
                for c in 0..g.len() {
                    if leq[a][b] && leq[b][c] {
                        assert!(leq[a][c]);
                    }
                }
            }
        }
    }

    #[test]
    fn parse_forms() {
        let l = lt("A2");
        assert_eq!(el("A2", "s1s2"), el("A2", "s1 s2"));
        assert_eq!(el("A2", "s1*s2"), el("A2", "[2,3,1]"));
        assert!(WeylElement::parse(l, "[1,1,3]").is_err());
        assert!(WeylElement::parse(l, "[-1,2,3]").is_err());
        assert!(WeylElement::parse(lt("D2"), "[-1,2]").is_err());
        assert!(WeylElement::parse(lt("D2"), "[-1,-2]").is_ok());
        assert!(WeylElement::parse(l, "s4").is_err());
        assert!(WeylElement::parse(l, "x1").is_err());
    }
}

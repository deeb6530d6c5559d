//! Finitely generated groups `Z^d` and `F_k` with the word metric.
//!
//! Elements of `Z^d` are integer vectors, elements of `F_k` are reduced
//! words over signed generator letters. Both groups use the standard
//! symmetric generating set: `±e_i` for `Z^d`, `a_i^{±1}` for `F_k`.
//! Letters are written `a..z` for generators and `A..Z` for their inverses.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::limits::Limits;

/// A signed generator: `+i` is the `i`-th generator (1-based), `-i` its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter(i8);

impl Letter {
    pub fn new(index: usize, inverse: bool) -> Letter {
        assert!((1..=26).contains(&index), "generator index out of range");
        let v = index as i8;
        Letter(if inverse { -v } else { v })
    }

    pub fn index(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    pub fn inverse(self) -> Letter {
        Letter(-self.0)
    }

    pub fn to_char(self) -> char {
        let base = if self.is_inverse() { b'A' } else { b'a' };
        (base + (self.index() as u8 - 1)) as char
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'a'..='z' => Some(Letter::new((c as u8 - b'a') as usize + 1, false)),
            'A'..='Z' => Some(Letter::new((c as u8 - b'A') as usize + 1, true)),
            _ => None,
        }
    }

    // a < A < b < B < ...
    fn sort_key(self) -> u8 {
        (self.index() as u8) * 2 + u8::from(self.is_inverse())
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupElement {
    /// A point of `Z^d`.
    Vector(Vec<i64>),
    /// A reduced word of `F_k`.
    Word(Vec<Letter>),
}

impl GroupElement {
    /// Length in the standard generators: L1 norm or reduced word length.
    pub fn length(&self) -> usize {
        match self {
            GroupElement::Vector(v) => v.iter().map(|x| x.unsigned_abs() as usize).sum(),
            GroupElement::Word(w) => w.len(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.length() == 0
    }

    pub fn inv(&self) -> GroupElement {
        match self {
            GroupElement::Vector(v) => GroupElement::Vector(v.iter().map(|x| -x).collect()),
            GroupElement::Word(w) => {
                GroupElement::Word(w.iter().rev().map(|x| x.inverse()).collect())
            }
        }
    }

    /// Right multiplication by a single generator letter.
    pub fn mul_letter(&self, x: Letter) -> GroupElement {
        match self {
            GroupElement::Vector(v) => {
                let mut v = v.clone();
                let i = x.index() - 1;
                v[i] += if x.is_inverse() { -1 } else { 1 };
                GroupElement::Vector(v)
            }
            GroupElement::Word(w) => {
                let mut w = w.clone();
                if w.last() == Some(&x.inverse()) {
                    w.pop();
                } else {
                    w.push(x);
                }
                GroupElement::Word(w)
            }
        }
    }

    /// A shortest spelling of the element as a sequence of letters.
    pub fn letters(&self) -> Vec<Letter> {
        match self {
            GroupElement::Word(w) => w.clone(),
            GroupElement::Vector(v) => {
                let mut out = Vec::with_capacity(self.length());
                for (i, &x) in v.iter().enumerate() {
                    let letter = Letter::new(i + 1, x < 0);
                    out.extend(std::iter::repeat(letter).take(x.unsigned_abs() as usize));
                }
                out
            }
        }
    }
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.length().cmp(&other.length()).then_with(|| match (self, other) {
            (GroupElement::Vector(a), GroupElement::Vector(b)) => a.cmp(b),
            (GroupElement::Word(a), GroupElement::Word(b)) => a.cmp(b),
            (GroupElement::Vector(_), GroupElement::Word(_)) => Ordering::Less,
            (GroupElement::Word(_), GroupElement::Vector(_)) => Ordering::Greater,
        })
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Vector(v) => {
                write!(f, "(")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            GroupElement::Word(w) if w.is_empty() => write!(f, "1"),
            GroupElement::Word(w) => w.iter().try_for_each(|x| write!(f, "{}", x.to_char())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Group {
    /// `Z^d` with generators `±e_1..±e_d`.
    FreeAbelian(usize),
    /// `F_k` with generators `a_1..a_k` and inverses.
    Free(usize),
}

impl Group {
    pub fn free_abelian(d: usize) -> Result<Group> {
        if !(1..=26).contains(&d) {
            return Err(Error::InvalidInput(format!("Z^{d}: rank must be in 1..=26")));
        }
        Ok(Group::FreeAbelian(d))
    }

    pub fn free(k: usize) -> Result<Group> {
        if !(1..=26).contains(&k) {
            return Err(Error::InvalidInput(format!("F_{k}: rank must be in 1..=26")));
        }
        Ok(Group::Free(k))
    }

    pub fn integers() -> Group {
        Group::FreeAbelian(1)
    }

    pub fn rank(&self) -> usize {
        match *self {
            Group::FreeAbelian(d) => d,
            Group::Free(k) => k,
        }
    }

    pub fn identity(&self) -> GroupElement {
        match *self {
            Group::FreeAbelian(d) => GroupElement::Vector(vec![0; d]),
            Group::Free(_) => GroupElement::Word(Vec::new()),
        }
    }

    /// The symmetric generating set in canonical order `a, A, b, B, ...`.
    pub fn letters(&self) -> Vec<Letter> {
        (1..=self.rank())
            .flat_map(|i| [Letter::new(i, false), Letter::new(i, true)])
            .collect()
    }

    pub fn generator(&self, letter: Letter) -> Result<GroupElement> {
        if letter.index() > self.rank() {
            return Err(Error::GroupMismatch(format!(
                "letter {} outside {self}",
                letter.to_char()
            )));
        }
        Ok(self.identity().mul_letter(letter))
    }

    /// Convenience constructor for `Z` elements.
    pub fn int(&self, x: i64) -> GroupElement {
        debug_assert_eq!(*self, Group::FreeAbelian(1));
        GroupElement::Vector(vec![x])
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        match (self, g) {
            (Group::FreeAbelian(d), GroupElement::Vector(v)) => v.len() == *d,
            (Group::Free(k), GroupElement::Word(w)) => {
                w.iter().all(|x| x.index() <= *k)
                    && w.windows(2).all(|p| p[0] != p[1].inverse())
            }
            _ => false,
        }
    }

    pub fn check(&self, g: &GroupElement) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::GroupMismatch(format!("{g} is not an element of {self}")))
        }
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(mul_unchecked(a, b))
    }

    pub fn inv(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        Ok(a.inv())
    }

    pub fn word_length(&self, g: &GroupElement) -> Result<usize> {
        self.check(g)?;
        Ok(g.length())
    }

    /// `d(g, h) = |g^{-1} h|`.
    pub fn distance(&self, g: &GroupElement, h: &GroupElement) -> Result<usize> {
        self.check(g)?;
        self.check(h)?;
        Ok(mul_unchecked(&g.inv(), h).length())
    }

    /// Number of elements in a disk of radius `r`, or `None` on overflow.
    pub fn disk_size(&self, r: usize) -> Option<u128> {
        match *self {
            Group::Free(k) => {
                let k = k as u128;
                let mut total: u128 = 1;
                let mut sphere: u128 = 2 * k;
                for _ in 1..=r {
                    total = total.checked_add(sphere)?;
                    sphere = sphere.checked_mul(2 * k - 1)?;
                }
                Some(total)
            }
            Group::FreeAbelian(d) => {
                // sum_i 2^i C(d,i) C(r,i)
                let mut total: u128 = 0;
                for i in 0..=d.min(r) {
                    let term = binomial(d as u128, i as u128)?
                        .checked_mul(binomial(r as u128, i as u128)?)?
                        .checked_mul(1u128.checked_shl(i as u32)?)?;
                    total = total.checked_add(term)?;
                }
                Some(total)
            }
        }
    }

    pub fn disk(&self, r: usize, limits: &Limits) -> Result<Disk> {
        self.disk_around(r, &self.identity(), limits)
    }

    /// Elements at distance at most `r` from `center`, in length-lexicographic order.
    pub fn disk_around(&self, r: usize, center: &GroupElement, limits: &Limits) -> Result<Disk> {
        self.check(center)?;
        let size = self.disk_size(r).unwrap_or(u128::MAX);
        if size > limits.elements as u128 {
            return Err(Error::cap("disk elements", size, limits.elements as u128));
        }
        let mut elements = match *self {
            Group::Free(_) => free_ball(self, r),
            Group::FreeAbelian(d) => {
                let mut out = Vec::with_capacity(size as usize);
                let mut point = vec![0i64; d];
                lattice_ball(&mut point, 0, r as i64, &mut out);
                out
            }
        };
        if !center.is_identity() {
            for g in elements.iter_mut() {
                *g = mul_unchecked(center, g);
            }
        }
        elements.sort();
        Ok(Disk {
            center: center.clone(),
            radius: r,
            elements,
        })
    }

    pub fn parse(spec: &str) -> Result<Group> {
        let s = spec.trim();
        let bad = || Error::Parse(format!("unknown group {spec:?}; expected Z^d or F_k"));
        if s == "Z" {
            return Ok(Group::integers());
        }
        if let Some(rest) = s.strip_prefix("Z^") {
            return Group::free_abelian(rest.parse().map_err(|_| bad())?);
        }
        if let Some(rest) = s.strip_prefix("F_") {
            return Group::free(rest.parse().map_err(|_| bad())?);
        }
        Err(bad())
    }

    /// Parses an element literal: `(1,-2)` for `Z^d`, `aB` or `1` for `F_k`.
    pub fn parse_element(&self, lit: &str) -> Result<GroupElement> {
        let s = lit.trim();
        let g = match self {
            Group::FreeAbelian(_) => {
                let inner = s
                    .strip_prefix('(')
                    .and_then(|t| t.strip_suffix(')'))
                    .ok_or_else(|| Error::Parse(format!("bad vector literal {lit:?}")))?;
                let v = inner
                    .split(',')
                    .map(|x| x.trim().parse::<i64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| Error::Parse(format!("bad vector literal {lit:?}")))?;
                GroupElement::Vector(v)
            }
            Group::Free(_) => {
                if s == "1" || s.is_empty() {
                    GroupElement::Word(Vec::new())
                } else {
                    let letters = s
                        .chars()
                        .map(|c| {
                            Letter::from_char(c)
                                .ok_or_else(|| Error::Parse(format!("bad word literal {lit:?}")))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    reduce(letters)
                }
            }
        };
        self.check(&g)?;
        Ok(g)
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Group::FreeAbelian(d) => write!(f, "Z^{d}"),
            Group::Free(k) => write!(f, "F_{k}"),
        }
    }
}

/// A closed ball of the word metric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disk {
    pub center: GroupElement,
    pub radius: usize,
    pub elements: Vec<GroupElement>,
}

impl Disk {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.position(g).is_some()
    }

    pub fn position(&self, g: &GroupElement) -> Option<usize> {
        self.elements.binary_search(g).ok()
    }
}

pub(crate) fn mul_unchecked(a: &GroupElement, b: &GroupElement) -> GroupElement {
    match (a, b) {
        (GroupElement::Vector(x), GroupElement::Vector(y)) => {
            GroupElement::Vector(x.iter().zip(y).map(|(p, q)| p + q).collect())
        }
        (GroupElement::Word(x), GroupElement::Word(y)) => {
            reduce(x.iter().chain(y.iter()).copied())
        }
        _ => panic!("mixed group elements"),
    }
}

fn reduce(letters: impl IntoIterator<Item = Letter>) -> GroupElement {
    let mut out: Vec<Letter> = Vec::new();
    for x in letters {
        if out.last() == Some(&x.inverse()) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    GroupElement::Word(out)
}

fn free_ball(group: &Group, r: usize) -> Vec<GroupElement> {
    let letters = group.letters();
    let mut out = vec![Vec::<Letter>::new()];
    let mut frontier = vec![Vec::<Letter>::new()];
    for _ in 0..r {
        let mut next = Vec::with_capacity(frontier.len() * letters.len());
        for w in &frontier {
            for &x in &letters {
                if w.last() == Some(&x.inverse()) {
                    continue;
                }
                let mut v = w.clone();
                v.push(x);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.into_iter().map(GroupElement::Word).collect()
}

fn lattice_ball(point: &mut Vec<i64>, axis: usize, budget: i64, out: &mut Vec<GroupElement>) {
    if axis == point.len() {
        out.push(GroupElement::Vector(point.clone()));
        return;
    }
    for x in -budget..=budget {
        point[axis] = x;
        lattice_ball(point, axis + 1, budget - x.abs(), out);
    }
    point[axis] = 0;
}

fn binomial(n: u128, k: u128) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

//! Sparse multivariate polynomials over a finite field, with optional
//! σ-twisted variables, and the text format for equation systems.
//!
//! ```text
//! # field 2^2/1,1,1/1
//! # vars x_i_j lex n=4
//! # group: hull
//! x_1_3 + x_2_4
//! # group: form
//! x_1_2*x_3_4 + (w+1)*x_1_4^q*x_2_3
//! ```
//!
//! A polynomial line is a sum of terms separated by `+`; a term is an
//! optional coefficient followed by `*`-separated factors. A factor is a
//! variable, optionally followed by `^q` (apply σ) and then `^e` (power).
//! Coefficients are field-element literals; composite ones are written in
//! parentheses. Lines beginning with `#` other than the recognized headers
//! are comments. `# vars x_i_j sym n=N` declares variables `x_i_j`, `i ≤ j`,
//! of the symmetric (Veronese) layout instead of the lex `i < j` layout.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::field::{Felt, Field};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A variable, possibly twisted by σ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub index: usize,
    pub frob: bool,
}

impl Var {
    pub fn plain(index: usize) -> Var {
        Var { index, frob: false }
    }
    pub fn twisted(index: usize) -> Var {
        Var { index, frob: true }
    }
}

/// A product of variable powers, sorted by variable, exponents positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn from_factors(factors: &[(Var, u32)]) -> Monomial {
        let mut m = Monomial::one();
        for &(v, e) in factors {
            m = m.mul(&Monomial(vec![(v, e)]));
        }
        m
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for &(v, e) in self.0.iter().chain(&other.0) {
            if e > 0 {
                *map.entry(v).or_default() += e;
            }
        }
        Monomial(map.into_iter().collect())
    }
}

impl Ord for Monomial {
    /// Higher degree first, then lexicographic on the factor list.
    fn cmp(&self, other: &Self) -> Ordering {
        other.degree().cmp(&self.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial: map from monomial to nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Felt>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn constant(c: Felt) -> Poly {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn var(v: Var) -> Poly {
        Poly::term(Felt::ONE, Monomial(vec![(v, 1)]))
    }

    pub fn term(c: Felt, m: Monomial) -> Poly {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// `Σ c_i x_i` from a coefficient row.
    pub fn linear(row: &[Felt]) -> Poly {
        let mut p = Poly::zero();
        for (i, &c) in row.iter().enumerate() {
            if !c.is_zero() {
                p.terms.insert(Monomial(vec![(Var::plain(i), 1)]), c);
            }
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, Felt)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn has_twisted_vars(&self) -> bool {
        self.terms.keys().any(|m| m.0.iter().any(|(v, _)| v.frob))
    }

    fn add_term(&mut self, field: &Field, m: Monomial, c: Felt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert(Felt::ZERO);
        *entry = field.add(*entry, c);
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, field: &Field, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(field, m.clone(), c);
        }
        out
    }

    pub fn sub(&self, field: &Field, other: &Poly) -> Poly {
        self.add(field, &other.scale(field, field.neg(Felt::ONE)))
    }

    pub fn scale(&self, field: &Field, c: Felt) -> Poly {
        let mut out = Poly::zero();
        for (m, &d) in &self.terms {
            out.add_term(field, m.clone(), field.mul(c, d));
        }
        out
    }

    pub fn mul(&self, field: &Field, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, &c1) in &self.terms {
            for (m2, &c2) in &other.terms {
                out.add_term(field, m1.mul(m2), field.mul(c1, c2));
            }
        }
        out
    }

    /// σ applied to the whole polynomial: coefficients are twisted and each
    /// variable's twist flag flips (σ² = id).
    pub fn frobenius(&self, field: &Field) -> Poly {
        let mut out = Poly::zero();
        for (m, &c) in &self.terms {
            let flipped = Monomial(m.0.iter().map(|&(v, e)| (Var { index: v.index, frob: !v.frob }, e)).collect());
            out.add_term(field, Monomial::from_factors(&flipped.0), field.frobenius(c));
        }
        out
    }

    /// Evaluates at a point; a twisted variable reads σ of the coordinate.
    pub fn eval(&self, field: &Field, point: &[Felt]) -> Felt {
        let mut acc = Felt::ZERO;
        for (m, &c) in &self.terms {
            let mut t = c;
            for &(v, e) in &m.0 {
                let x = if v.frob { field.frobenius(point[v.index]) } else { point[v.index] };
                t = field.mul(t, field.pow(x, e as u64));
            }
            acc = field.add(acc, t);
        }
        acc
    }

    /// Gradient at `point`. Twisted variables contribute nothing: the
    /// derivative of `t^(p^e)` vanishes in characteristic `p`.
    pub fn gradient_at(&self, field: &Field, point: &[Felt], nvars: usize) -> Vec<Felt> {
        let mut grad = vec![Felt::ZERO; nvars];
        for (m, &c) in &self.terms {
            for (k, &(v, e)) in m.0.iter().enumerate() {
                if v.frob {
                    continue;
                }
                let mult = field.from_int(e as i64);
                if mult.is_zero() {
                    continue;
                }
                let mut t = field.mul(c, mult);
                for (k2, &(v2, e2)) in m.0.iter().enumerate() {
                    let x = if v2.frob { field.frobenius(point[v2.index]) } else { point[v2.index] };
                    let pow = if k2 == k { e2 - 1 } else { e2 };
                    t = field.mul(t, field.pow(x, pow as u64));
                }
                grad[v.index] = field.add(grad[v.index], t);
            }
        }
        grad
    }

    /// Replaces every plain occurrence of variable `index` by `sub` and every
    /// twisted occurrence by `σ(sub)`.
    pub fn substitute(&self, field: &Field, index: usize, sub: &Poly) -> Poly {
        let sub_tw = sub.frobenius(field);
        let mut out = Poly::zero();
        for (m, &c) in &self.terms {
            let mut acc = Poly::constant(c);
            for &(v, e) in &m.0 {
                let base = if v.index != index {
                    Poly::var(v)
                } else if v.frob {
                    sub_tw.clone()
                } else {
                    sub.clone()
                };
                for _ in 0..e {
                    acc = acc.mul(field, &base);
                }
            }
            out = out.add(field, &acc);
        }
        out
    }

    /// Scales so the leading term (first in display order) has coefficient 1.
    pub fn monic(&self, field: &Field) -> Poly {
        match self.terms.values().next() {
            Some(&lead) => self.scale(field, field.inv(lead).expect("nonzero coefficient")),
            None => Poly::zero(),
        }
    }

    /// If the polynomial is a `p`-th power of an untwisted polynomial,
    /// returns its `p`-th root. Over a finite (perfect) field this keeps the
    /// zero set unchanged.
    pub fn pth_root(&self, field: &Field) -> Option<Poly> {
        let p = field.characteristic();
        if self.is_zero() || self.has_twisted_vars() || self.terms.keys().any(|m| m.0.iter().any(|&(_, e)| e % p != 0)) {
            return None;
        }
        // the inverse of x -> x^p on GF(p^k) is x -> x^(p^(k-1))
        let root_exp = (p as u64).pow(field.k() - 1);
        let mut out = Poly::zero();
        for (m, &c) in &self.terms {
            let mm = Monomial(m.0.iter().map(|&(v, e)| (v, e / p)).collect());
            out.add_term(field, mm, field.pow(c, root_exp));
        }
        Some(out)
    }

    /// Repeated [`Poly::pth_root`] followed by [`Poly::monic`].
    pub fn simplified(&self, field: &Field) -> Poly {
        let mut cur = self.clone();
        while let Some(r) = cur.pth_root(field) {
            if r.degree() == 0 {
                break;
            }
            cur = r;
        }
        cur.monic(field)
    }

    pub fn to_text(&self, field: &Field, naming: &VarNaming) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, &c)) in self.terms.iter().enumerate() {
            if k > 0 {
                out.push_str(" + ");
            }
            let coef = field.fmt_elem(c);
            let composite = coef.contains(['+', 'w']);
            let coef = if composite { format!("({coef})") } else { coef };
            if m.0.is_empty() {
                out.push_str(&coef);
                continue;
            }
            if c != Felt::ONE {
                let _ = write!(out, "{coef}*");
            }
            let factors: Vec<String> = m
                .0
                .iter()
                .map(|&(v, e)| {
                    let mut s = naming.name(v.index);
                    if v.frob {
                        s.push_str("^q");
                    }
                    if e > 1 {
                        let _ = write!(s, "^{e}");
                    }
                    s
                })
                .collect();
            out.push_str(&factors.join("*"));
        }
        out
    }
}

/// How variable indices map to names.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarNaming {
    /// `x_i_j`, `i < j`, lexicographic (Plücker coordinates).
    Wedge(usize),
    /// `x_i_j`, `i ≤ j`, lexicographic (Veronese coordinates).
    Sym(usize),
}

impl VarNaming {
    pub fn n(&self) -> usize {
        match *self {
            VarNaming::Wedge(n) | VarNaming::Sym(n) => n,
        }
    }

    pub fn nvars(&self) -> usize {
        match *self {
            VarNaming::Wedge(n) => n * (n - 1) / 2,
            VarNaming::Sym(n) => n * (n + 1) / 2,
        }
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let strict = matches!(self, VarNaming::Wedge(_));
        (0..n).flat_map(|i| ((if strict { i + 1 } else { i })..n).map(move |j| (i, j))).collect()
    }

    pub fn name(&self, index: usize) -> String {
        let (i, j) = self.pairs()[index];
        format!("x_{}_{}", i + 1, j + 1)
    }

    pub fn index_of(&self, i: usize, j: usize) -> Option<usize> {
        self.pairs().iter().position(|&p| p == (i, j))
    }

    fn header(&self) -> String {
        match *self {
            VarNaming::Wedge(n) => format!("# vars x_i_j lex n={n}"),
            VarNaming::Sym(n) => format!("# vars x_i_j sym n={n}"),
        }
    }
}

/// A named family of polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqnGroup {
    pub name: String,
    pub polys: Vec<Poly>,
}

/// Polynomial generators, grouped by origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqnSystem {
    pub field: Field,
    pub naming: VarNaming,
    pub groups: Vec<EqnGroup>,
}

impl EqnSystem {
    pub fn new(field: &Field, naming: VarNaming) -> EqnSystem {
        EqnSystem { field: field.clone(), naming, groups: Vec::new() }
    }

    pub fn push_group(&mut self, name: &str, polys: Vec<Poly>) {
        self.groups.push(EqnGroup { name: name.to_string(), polys });
    }

    pub fn group(&self, name: &str) -> Option<&EqnGroup> {
        self.groups.iter().find(|g| g.name == name)
    }

    pub fn polys(&self) -> impl Iterator<Item = &Poly> {
        self.groups.iter().flat_map(|g| g.polys.iter())
    }

    pub fn len(&self) -> usize {
        self.groups.iter().map(|g| g.polys.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Whether every generator vanishes at `point`.
    pub fn satisfied_by(&self, point: &[Felt]) -> bool {
        self.polys().all(|p| p.eval(&self.field, point).is_zero())
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("# field {}\n{}\n", self.field.spec(), self.naming.header());
        for g in &self.groups {
            let _ = writeln!(out, "# group: {}", g.name);
            for p in &g.polys {
                out.push_str(&p.to_text(&self.field, &self.naming));
                out.push('\n');
            }
        }
        out
    }

    /// Parses the text format. The field header is required unless
    /// `field` is given; an explicit field wins over the header.
    pub fn parse(text: &str, field: Option<&Field>) -> Result<EqnSystem, PolyError> {
        let err = |line: usize, msg: &str| PolyError::Parse { line, msg: msg.to_string() };
        let mut fld = field.cloned();
        let mut naming = None;
        let mut groups: Vec<EqnGroup> = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let ln = ln + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                let rest = rest.trim();
                if let Some(spec) = rest.strip_prefix("field ") {
                    if fld.is_none() {
                        fld = Some(Field::parse_spec(spec.trim()).map_err(|e| err(ln, &e.to_string()))?);
                    }
                } else if let Some(v) = rest.strip_prefix("vars ") {
                    let words: Vec<&str> = v.split_whitespace().collect();
                    let n = words
                        .iter()
                        .find_map(|w| w.strip_prefix("n="))
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| err(ln, "vars header needs n=<dim>"))?;
                    naming = Some(if words.contains(&"sym") { VarNaming::Sym(n) } else { VarNaming::Wedge(n) });
                } else if let Some(g) = rest.strip_prefix("group:") {
                    groups.push(EqnGroup { name: g.trim().to_string(), polys: Vec::new() });
                }
                continue;
            }
            let f = fld.as_ref().ok_or_else(|| err(ln, "polynomial before `# field` header"))?;
            let nm = naming.ok_or_else(|| err(ln, "polynomial before `# vars` header"))?;
            let p = parse_poly(f, &nm, line).map_err(|m| err(ln, &m))?;
            if groups.is_empty() {
                groups.push(EqnGroup { name: "main".into(), polys: Vec::new() });
            }
            groups.last_mut().expect("nonempty").polys.push(p);
        }
        let field = fld.ok_or_else(|| err(0, "missing `# field` header"))?;
        let naming = naming.ok_or_else(|| err(0, "missing `# vars` header"))?;
        Ok(EqnSystem { field, naming, groups })
    }
}

/// Splits at top-level `+` / `-` signs (outside parentheses).
fn split_terms(s: &str) -> Result<Vec<(bool, String)>, String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut neg = false;
    let mut prev: Option<char> = None;
    for ch in s.chars().filter(|c| !c.is_whitespace()) {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return Err("unbalanced parentheses".into());
        }
        // a sign right after `^` belongs to nothing we support
        if depth == 0 && (ch == '+' || ch == '-') && prev != Some('^') {
            if !cur.is_empty() {
                out.push((neg, std::mem::take(&mut cur)));
            } else if ch == '+' && prev.is_some() && prev != Some('+') && prev != Some('-') {
                return Err("empty term".into());
            }
            neg = ch == '-';
        } else {
            cur.push(ch);
        }
        prev = Some(ch);
    }
    if depth != 0 {
        return Err("unbalanced parentheses".into());
    }
    if cur.is_empty() {
        return Err("dangling sign".into());
    }
    out.push((neg, cur));
    Ok(out)
}

fn parse_poly(field: &Field, naming: &VarNaming, s: &str) -> Result<Poly, String> {
    let mut p = Poly::zero();
    for (neg, term) in split_terms(s)? {
        let mut coef = Felt::ONE;
        let mut mono = Monomial::one();
        for factor in split_factors(&term) {
            if factor.starts_with("x_") {
                let mut parts = factor.split('^');
                let name = parts.next().expect("split yields one part");
                let idx: Vec<usize> = name[2..]
                    .split('_')
                    .map(|t| t.parse::<usize>().map_err(|_| format!("bad variable `{name}`")))
                    .collect::<Result<_, _>>()?;
                if idx.len() != 2 || idx[0] == 0 || idx[1] == 0 {
                    return Err(format!("bad variable `{name}`"));
                }
                let index =
                    naming.index_of(idx[0] - 1, idx[1] - 1).ok_or_else(|| format!("unknown variable `{name}`"))?;
                let mut frob = false;
                let mut exp = 1u32;
                for suffix in parts {
                    if suffix == "q" && !frob && exp == 1 {
                        frob = true;
                    } else {
                        exp = suffix.parse().map_err(|_| format!("bad exponent in `{factor}`"))?;
                    }
                }
                mono = mono.mul(&Monomial(vec![(Var { index, frob }, exp)]));
            } else {
                let c = field.parse_elem(&factor).map_err(|e| e.to_string())?;
                coef = field.mul(coef, c);
            }
        }
        if neg {
            coef = field.neg(coef);
        }
        p = p.add(field, &Poly::term(coef, mono));
    }
    Ok(p)
}

fn split_factors(term: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    for ch in term.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if ch == '*' && depth == 0 {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(ch);
        }
    }
    out.push(cur);
    out
}

//! Cyclotomic numbers, class functions and character tables.

use crate::error::{Error, Result};
use crate::exactlin::{fmt_rat, rat, Int, Rat};
use crate::group_action::{cyclotomic_poly, FiniteGroup};
use crate::instance::{qvec, Q};
use crate::poly::Poly;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Element of `Q(zeta_n)` in the power basis reduced modulo `Phi_n`.
#[derive(Clone, Debug)]
pub struct Cyclo {
    n: usize,
    p: Poly,
}

impl Cyclo {
    fn reduce(n: usize, p: Poly) -> Self {
        let p = if n <= 2 { Poly::constant(p.eval(&if n == 1 { rat(1) } else { rat(-1) })) } else { p.divrem(&cyclotomic_poly(n)).1 };
        Cyclo { n, p }
    }

    pub fn rational(r: Rat) -> Self {
        Cyclo { n: 1, p: Poly::constant(r) }
    }

    pub fn int(k: i64) -> Self {
        Self::rational(rat(k))
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    /// `zeta_n^k`
    pub fn root(n: usize, k: i64) -> Self {
        let k = k.rem_euclid(n as i64) as usize;
        Self::reduce(n, Poly::monomial(Rat::one(), k))
    }

    /// `sum_k c[k] zeta_n^k`
    pub fn from_coeffs(n: usize, c: Vec<Rat>) -> Self {
        Self::reduce(n, Poly::new(c))
    }

    pub fn conductor(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[Rat] {
        self.p.coeffs()
    }

    /// The same number written over `Q(zeta_m)`; `m` must be a multiple of the conductor.
    pub fn lift(&self, m: usize) -> Cyclo {
        if m == self.n {
            return self.clone();
        }
        assert!(m % self.n == 0, "conductor {} does not divide {m}", self.n);
        Self::reduce(m, self.p.subs_power(m / self.n))
    }

    fn common(a: &Cyclo, b: &Cyclo) -> (Cyclo, Cyclo) {
        let m = a.n.lcm(&b.n);
        (a.lift(m), b.lift(m))
    }

    pub fn conj(&self) -> Cyclo {
        let mut c = vec![Rat::zero(); self.n];
        for (k, x) in self.p.coeffs().iter().enumerate() {
            c[(self.n - k % self.n) % self.n] += x;
        }
        Self::from_coeffs(self.n, c)
    }

    pub fn to_rational(&self) -> Option<Rat> {
        (self.p.degree().unwrap_or(0) == 0).then(|| self.p.coeff(0))
    }

    pub fn to_integer(&self) -> Option<Int> {
        self.to_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero()
    }

    pub fn scale(&self, r: &Rat) -> Cyclo {
        Cyclo { n: self.n, p: self.p.scale(r) }
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, o: &Self) -> bool {
        let (a, b) = Cyclo::common(self, o);
        a.p == b.p
    }
}

impl Eq for Cyclo {}

impl Add for &Cyclo {
    type Output = Cyclo;
    fn add(self, o: &Cyclo) -> Cyclo {
        let (a, b) = Cyclo::common(self, o);
        Cyclo { n: a.n, p: &a.p + &b.p }
    }
}

impl Sub for &Cyclo {
    type Output = Cyclo;
    fn sub(self, o: &Cyclo) -> Cyclo {
        let (a, b) = Cyclo::common(self, o);
        Cyclo { n: a.n, p: &a.p - &b.p }
    }
}

impl Mul for &Cyclo {
    type Output = Cyclo;
    fn mul(self, o: &Cyclo) -> Cyclo {
        let (a, b) = Cyclo::common(self, o);
        Cyclo::reduce(a.n, &a.p * &b.p)
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo { n: self.n, p: -&self.p }
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{}", fmt_rat(&r));
        }
        let mut parts = Vec::new();
        for (k, c) in self.p.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let z = match k {
                0 => String::new(),
                1 => format!("z{}", self.n),
                _ => format!("z{}^{k}", self.n),
            };
            parts.push(if z.is_empty() {
                fmt_rat(c)
            } else if c.is_one() {
                z
            } else if *c == -Rat::one() {
                format!("-{z}")
            } else {
                format!("{}*{z}", fmt_rat(c))
            });
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CycloJson {
    Rational(Q),
    Cyclotomic { conductor: usize, coeffs: Vec<Q> },
}

/// Rational values are written as numbers, others as coefficients over `zeta_conductor`.
impl Serialize for Cyclo {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.to_rational() {
            Some(r) => CycloJson::Rational(Q(r)),
            None => CycloJson::Cyclotomic { conductor: self.n, coeffs: qvec(self.p.coeffs()) },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclo {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(match CycloJson::deserialize(d)? {
            CycloJson::Rational(q) => Cyclo::rational(q.0),
            CycloJson::Cyclotomic { conductor, coeffs } => {
                if conductor == 0 {
                    return Err(serde::de::Error::custom("conductor must be positive"));
                }
                Cyclo::from_coeffs(conductor, coeffs.into_iter().map(|q| q.0).collect())
            }
        })
    }
}

/// A function on conjugacy classes, one value per class in the group's order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ClassFunction {
    pub values: Vec<Cyclo>,
}

impl ClassFunction {
    pub fn from_rationals(v: &[Rat]) -> Self {
        ClassFunction { values: v.iter().cloned().map(Cyclo::rational).collect() }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        ClassFunction { values: v.iter().map(|&x| Cyclo::int(x)).collect() }
    }

    pub fn zero(classes: usize) -> Self {
        ClassFunction { values: vec![Cyclo::zero(); classes] }
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        ClassFunction { values: vec![Cyclo::one(); g.num_classes()] }
    }

    pub fn regular(g: &FiniteGroup) -> Self {
        let mut v = vec![Cyclo::zero(); g.num_classes()];
        v[g.class_of(0)] = Cyclo::int(g.order() as i64);
        ClassFunction { values: v }
    }

    pub fn degree(&self, g: &FiniteGroup) -> &Cyclo {
        &self.values[g.class_of(0)]
    }

    /// Values as rationals, if they all are.
    pub fn rational_values(&self) -> Option<Vec<Rat>> {
        self.values.iter().map(|v| v.to_rational()).collect()
    }

    pub fn add(&self, o: &ClassFunction) -> ClassFunction {
        ClassFunction { values: self.values.iter().zip(&o.values).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &ClassFunction) -> ClassFunction {
        ClassFunction { values: self.values.iter().zip(&o.values).map(|(a, b)| a - b).collect() }
    }

    pub fn mul(&self, o: &ClassFunction) -> ClassFunction {
        ClassFunction { values: self.values.iter().zip(&o.values).map(|(a, b)| a * b).collect() }
    }

    pub fn scale(&self, r: &Rat) -> ClassFunction {
        ClassFunction { values: self.values.iter().map(|a| a.scale(r)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }
}

impl fmt::Display for ClassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.values.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", v.join(", "))
    }
}

/// `<a, b> = 1/|G| sum_g a(g) conj(b(g))`
pub fn inner_product(g: &FiniteGroup, a: &ClassFunction, b: &ClassFunction) -> Cyclo {
    let mut s = Cyclo::zero();
    for (c, size) in g.class_sizes().into_iter().enumerate() {
        let term = &a.values[c] * &b.values[c].conj();
        s = &s + &term.scale(&rat(size as i64));
    }
    s.scale(&Rat::new(Int::one(), Int::from(g.order())))
}

/// Permutation character of `G` acting on a finite invariant point set.
pub fn perm_character(g: &FiniteGroup, points: &[Vec<Rat>]) -> Result<ClassFunction> {
    let mut vals = Vec::with_capacity(g.num_classes());
    for c in 0..g.num_classes() {
        let h = g.element(g.class_rep(c));
        let mut fixed = 0i64;
        for p in points {
            let q = h.apply(p);
            if !points.contains(&q) {
                return Err(Error::NotInvariant(format!("point set not closed under the group: {q:?}")));
            }
            if q == *p {
                fixed += 1;
            }
        }
        vals.push(Cyclo::int(fixed));
    }
    Ok(ClassFunction { values: vals })
}

/// Induces a function on the subgroup `h` (given per element of `h`) to `G`.
pub fn induce_values<T, F>(g: &FiniteGroup, h: &[usize], phi: F, zero: T, scale: impl Fn(&T, &Rat) -> T) -> Result<Vec<T>>
where
    T: Clone,
    for<'a> &'a T: Add<&'a T, Output = T>,
    F: Fn(usize) -> T,
{
    g.check_subgroup(h)?;
    let mut pos = vec![usize::MAX; g.order()];
    for (i, &x) in h.iter().enumerate() {
        pos[x] = i;
    }
    let inv = Rat::new(Int::one(), Int::from(h.len()));
    let mut out = Vec::with_capacity(g.num_classes());
    for c in 0..g.num_classes() {
        let gg = g.class_rep(c);
        let mut s = zero.clone();
        for x in 0..g.order() {
            let conj = g.mul(g.mul(g.inverse(x), gg), x);
            if pos[conj] != usize::MAX {
                s = &s + &phi(pos[conj]);
            }
        }
        out.push(scale(&s, &inv));
    }
    Ok(out)
}

/// Induction of a class function given by its values on the elements of `h`.
pub fn induce(g: &FiniteGroup, h: &[usize], values: &[Cyclo]) -> Result<ClassFunction> {
    if values.len() != h.len() {
        return Err(Error::DimensionMismatch("one value per subgroup element expected".into()));
    }
    let v = induce_values(g, h, |i| values[i].clone(), Cyclo::zero(), |a, r| a.scale(r))?;
    Ok(ClassFunction { values: v })
}

/// Values of `chi` on the elements of the subgroup `h`.
pub fn restrict(g: &FiniteGroup, h: &[usize], chi: &ClassFunction) -> Result<Vec<Cyclo>> {
    g.check_subgroup(h)?;
    Ok(h.iter().map(|&x| chi.values[g.class_of(x)].clone()).collect())
}

/// Irreducible characters of a group, rows aligned with the group's classes.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub names: Vec<String>,
    pub chars: Vec<ClassFunction>,
    pub source: String,
}

/// Multiplicities of the irreducible constituents.
pub fn decompose(g: &FiniteGroup, table: &CharacterTable, chi: &ClassFunction) -> Result<Vec<Int>> {
    let mut out = Vec::with_capacity(table.chars.len());
    let mut rebuilt = ClassFunction::zero(g.num_classes());
    for (name, irr) in table.names.iter().zip(&table.chars) {
        let ip = inner_product(g, chi, irr);
        let m = ip
            .to_integer()
            .ok_or_else(|| Error::NotVirtualCharacter(format!("<chi, {name}> = {ip}")))?;
        rebuilt = rebuilt.add(&irr.scale(&Rat::from_integer(m.clone())));
        out.push(m);
    }
    if rebuilt != *chi {
        return Err(Error::NotVirtualCharacter("not in the span of the irreducible characters".into()));
    }
    Ok(out)
}

pub fn is_effective(g: &FiniteGroup, table: &CharacterTable, chi: &ClassFunction) -> Result<bool> {
    Ok(decompose(g, table, chi)?.iter().all(|m| !m.is_negative()))
}

/// `a[i][j][k] = #{(x, y) in K_i x K_j : x y = z_k}` for a fixed `z_k in K_k`.
fn class_constants(g: &FiniteGroup) -> Vec<Vec<Vec<i64>>> {
    let r = g.num_classes();
    let mut a = vec![vec![vec![0i64; r]; r]; r];
    for k in 0..r {
        let z = g.class_rep(k);
        for x in 0..g.order() {
            let y = g.mul(g.inverse(x), z);
            a[g.class_of(x)][g.class_of(y)][k] += 1;
        }
    }
    a
}

impl CharacterTable {
    /// Checks that the rows are exactly the irreducible characters.
    pub fn verify(&self, g: &FiniteGroup) -> Result<()> {
        let r = g.num_classes();
        if self.chars.len() != r || self.chars.iter().any(|c| c.values.len() != r) {
            return Err(Error::TableInvalid(format!("expected a {r}x{r} table")));
        }
        for (i, a) in self.chars.iter().enumerate() {
            for (j, b) in self.chars.iter().enumerate() {
                let ip = inner_product(g, a, b);
                let want = if i == j { Cyclo::one() } else { Cyclo::zero() };
                if ip != want {
                    return Err(Error::TableInvalid(format!("<{}, {}> = {ip}", self.names[i], self.names[j])));
                }
            }
        }
        let consts = class_constants(g);
        let sizes = g.class_sizes();
        for (name, chi) in self.names.iter().zip(&self.chars) {
            let deg = chi.degree(g).to_rational().filter(|d| d.is_positive() && d.is_integer());
            let Some(deg) = deg else {
                return Err(Error::TableInvalid(format!("{name} has no positive integral degree")));
            };
            let omega: Vec<Cyclo> =
                (0..r).map(|c| chi.values[c].scale(&(rat(sizes[c] as i64) / &deg))).collect();
            for i in 0..r {
                for j in 0..r {
                    let lhs = &omega[i] * &omega[j];
                    let mut rhs = Cyclo::zero();
                    for k in 0..r {
                        if consts[i][j][k] != 0 {
                            rhs = &rhs + &omega[k].scale(&rat(consts[i][j][k]));
                        }
                    }
                    if lhs != rhs {
                        return Err(Error::TableInvalid(format!("{name} is not a central character")));
                    }
                }
            }
        }
        Ok(())
    }

    /// A verified table: computed for abelian groups, matched against the
    /// built-in symmetric and dihedral tables otherwise.
    pub fn for_group(g: &FiniteGroup) -> Result<Self> {
        if g.is_abelian() {
            let t = abelian_table(g);
            t.verify(g)?;
            return Ok(t);
        }
        for spec in builtin_specs() {
            if let Some(t) = match_builtin(g, &spec) {
                return Ok(t);
            }
        }
        Err(Error::TableInvalid(format!(
            "no character table available for this group of order {}",
            g.order()
        )))
    }

    /// Table supplied by the caller, indexed by the group's classes.
    pub fn from_values(g: &FiniteGroup, names: Vec<String>, chars: Vec<ClassFunction>) -> Result<Self> {
        let t = CharacterTable { names, chars, source: "input".into() };
        t.verify(g)?;
        Ok(t)
    }

    pub fn dims(&self, g: &FiniteGroup) -> Vec<Int> {
        self.chars.iter().map(|c| c.degree(g).to_integer().unwrap_or_default()).collect()
    }
}

fn abelian_table(g: &FiniteGroup) -> CharacterTable {
    let e = g.exponent();
    let gens = g.generators().to_vec();
    let n = g.order();
    let mut chars: Vec<Vec<usize>> = Vec::new();
    let total = (0..gens.len()).fold(1usize, |acc, _| acc * e);
    for code in 0..total {
        let mut c = code;
        let assign: Vec<usize> = gens
            .iter()
            .map(|_| {
                let a = c % e;
                c /= e;
                a
            })
            .collect();
        let mut val = vec![usize::MAX; n];
        val[0] = 0;
        let mut stack = vec![0usize];
        let mut ok = true;
        while let Some(x) = stack.pop() {
            for (i, &s) in gens.iter().enumerate() {
                let y = g.mul(s, x);
                let v = (val[x] + assign[i]) % e;
                if val[y] == usize::MAX {
                    val[y] = v;
                    stack.push(y);
                } else if val[y] != v {
                    ok = false;
                }
            }
        }
        if ok && !chars.contains(&val) {
            chars.push(val);
        }
    }
    let names = (0..chars.len()).map(|i| if i == 0 { "triv".to_string() } else { format!("chi{i}") }).collect();
    let chars = chars
        .into_iter()
        .map(|val| ClassFunction {
            values: (0..g.num_classes()).map(|c| Cyclo::root(e, val[g.class_rep(c)] as i64)).collect(),
        })
        .collect();
    CharacterTable { names, chars, source: "abelian".into() }
}

struct BuiltinSpec {
    name: String,
    order: usize,
    /// (element order, class size)
    classes: Vec<(usize, usize)>,
    chars: Vec<(String, Vec<Cyclo>)>,
}

fn ints(v: &[i64]) -> Vec<Cyclo> {
    v.iter().map(|&x| Cyclo::int(x)).collect()
}

fn builtin_specs() -> Vec<BuiltinSpec> {
    let mut out = vec![
        BuiltinSpec {
            name: "S3".into(),
            order: 6,
            classes: vec![(1, 1), (2, 3), (3, 2)],
            chars: vec![
                ("triv".into(), ints(&[1, 1, 1])),
                ("sign".into(), ints(&[1, -1, 1])),
                ("std".into(), ints(&[2, 0, -1])),
            ],
        },
        BuiltinSpec {
            name: "S4".into(),
            order: 24,
            classes: vec![(1, 1), (2, 6), (2, 3), (3, 8), (4, 6)],
            chars: vec![
                ("triv".into(), ints(&[1, 1, 1, 1, 1])),
                ("sign".into(), ints(&[1, -1, 1, 1, -1])),
                ("std".into(), ints(&[3, 1, -1, 0, -1])),
                ("std_sign".into(), ints(&[3, -1, -1, 0, 1])),
                ("rho2".into(), ints(&[2, 0, 2, -1, 0])),
            ],
        },
        BuiltinSpec {
            name: "S5".into(),
            order: 120,
            classes: vec![(1, 1), (2, 10), (2, 15), (3, 20), (6, 20), (4, 30), (5, 24)],
            chars: vec![
                ("[5]".into(), ints(&[1, 1, 1, 1, 1, 1, 1])),
                ("[1^5]".into(), ints(&[1, -1, 1, 1, -1, -1, 1])),
                ("[4,1]".into(), ints(&[4, 2, 0, 1, -1, 0, -1])),
                ("[2,1^3]".into(), ints(&[4, -2, 0, 1, 1, 0, -1])),
                ("[3,2]".into(), ints(&[5, 1, 1, -1, 1, -1, 0])),
                ("[2,2,1]".into(), ints(&[5, -1, 1, -1, -1, 1, 0])),
                ("[3,1,1]".into(), ints(&[6, 0, -2, 0, 0, 0, 1])),
            ],
        },
    ];
    for n in 4..=6 {
        out.push(dihedral_spec(n));
    }
    out
}

/// Dihedral group of order `2n`: classes are the identity, rotation classes
/// `r^k` for `1 <= k <= n/2`, then the reflection classes.
fn dihedral_spec(n: usize) -> BuiltinSpec {
    let half = n / 2;
    let mut classes = vec![(1usize, 1usize)];
    for k in 1..=half {
        let size = if 2 * k == n { 1 } else { 2 };
        classes.push((n / n.gcd(&k), size));
    }
    if n % 2 == 0 {
        classes.push((2, half));
        classes.push((2, half));
    } else {
        classes.push((2, n));
    }
    let rot = |f: &dyn Fn(usize) -> Cyclo| -> Vec<Cyclo> { (0..=half).map(f).collect() };
    let mut chars = Vec::new();
    let refl = if n % 2 == 0 { 2 } else { 1 };
    let mk = |r: Vec<Cyclo>, s: Vec<i64>| -> Vec<Cyclo> {
        let mut v = r;
        v.extend(s.into_iter().map(Cyclo::int));
        v
    };
    chars.push(("triv".to_string(), mk(rot(&|_| Cyclo::one()), vec![1; refl])));
    chars.push(("sign".to_string(), mk(rot(&|_| Cyclo::one()), vec![-1; refl])));
    if n % 2 == 0 {
        let alt = |k: usize| Cyclo::int(if k % 2 == 0 { 1 } else { -1 });
        chars.push(("alt+".to_string(), mk(rot(&alt), vec![1, -1])));
        chars.push(("alt-".to_string(), mk(rot(&alt), vec![-1, 1])));
    }
    for j in 1..=(n - 1) / 2 {
        let f = move |k: usize| &Cyclo::root(n, (j * k) as i64) + &Cyclo::root(n, -((j * k) as i64));
        chars.push((format!("rho{j}"), mk(rot(&f), vec![0; refl])));
    }
    BuiltinSpec { name: format!("D{n}"), order: 2 * n, classes, chars }
}

fn match_builtin(g: &FiniteGroup, spec: &BuiltinSpec) -> Option<CharacterTable> {
    if g.order() != spec.order || g.num_classes() != spec.classes.len() {
        return None;
    }
    let key = |c: usize| (g.element_order(g.class_rep(c)), g.classes()[c].len());
    let mut want: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for &k in &spec.classes {
        *want.entry(k).or_default() += 1;
    }
    let mut have: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for c in 0..g.num_classes() {
        *have.entry(key(c)).or_default() += 1;
    }
    if want != have {
        return None;
    }
    // Search bijections between group classes and table columns that agree on
    // (order, size); keep the first one passing verification.
    let r = g.num_classes();
    let mut assign = vec![usize::MAX; r];
    let mut used = vec![false; r];
    fn search(
        c: usize,
        g: &FiniteGroup,
        spec: &BuiltinSpec,
        key: &dyn Fn(usize) -> (usize, usize),
        assign: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> Option<CharacterTable> {
        if c == assign.len() {
            let t = CharacterTable {
                names: spec.chars.iter().map(|(n, _)| n.clone()).collect(),
                chars: spec
                    .chars
                    .iter()
                    .map(|(_, v)| ClassFunction { values: assign.iter().map(|&col| v[col].clone()).collect() })
                    .collect(),
                source: spec.name.clone(),
            };
            return t.verify(g).is_ok().then_some(t);
        }
        for col in 0..spec.classes.len() {
            if used[col] || spec.classes[col] != key(c) {
                continue;
            }
            used[col] = true;
            assign[c] = col;
            if let Some(t) = search(c + 1, g, spec, key, assign, used) {
                return Some(t);
            }
            used[col] = false;
        }
        None
    }
    search(0, g, spec, &key, &mut assign, &mut used)
}

/// `det(I - g t)` on the extended lattice, as a class function per power of `t`.
pub fn det_series(g: &FiniteGroup) -> Vec<Poly> {
    (0..g.num_classes()).map(|c| g.element(g.class_rep(c)).det_series()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat_vec;
    use crate::group_action::AffineMap;

    fn perm(p: &[usize]) -> AffineMap {
        let n = p.len();
        let mut rows = vec![vec![0i64; n]; n];
        for (i, &j) in p.iter().enumerate() {
            rows[j][i] = 1;
        }
        AffineMap::from_rows(&rows, &vec![0; n]).unwrap()
    }

    fn klein() -> FiniteGroup {
        let s = AffineMap::from_rows(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, -1]], &[0, 0, 0]).unwrap();
        let t = AffineMap::from_rows(&[vec![0, -1, 0], vec![-1, 0, 0], vec![0, 0, -1]], &[0, 0, 0]).unwrap();
        FiniteGroup::generate(3, &[s, t]).unwrap()
    }

    #[test]
    fn cyclotomic_arithmetic() {
        let z = Cyclo::root(5, 1);
        let mut s = Cyclo::zero();
        for k in 0..5 {
            s = &s + &Cyclo::root(5, k);
        }
        assert!(s.is_zero());
        assert_eq!(&z * &z.conj(), Cyclo::one());
        assert_eq!(Cyclo::root(4, 2), Cyclo::int(-1));
        assert_eq!(Cyclo::root(2, 1), Cyclo::root(6, 3));
    }

    #[test]
    fn cube_vertices_regular_for_klein() {
        let g = klein();
        let cube: Vec<Vec<Rat>> = (0..8)
            .map(|i| rat_vec(&[if i & 1 == 0 { 1 } else { -1 }, if i & 2 == 0 { 1 } else { -1 }, if i & 4 == 0 { 1 } else { -1 }]))
            .collect();
        let chi = perm_character(&g, &cube).unwrap();
        assert_eq!(chi, ClassFunction::from_ints(&[8, 0, 0, 0]));
        assert_eq!(inner_product(&g, &chi, &ClassFunction::trivial(&g)), Cyclo::int(2));
        let t = CharacterTable::for_group(&g).unwrap();
        assert_eq!(decompose(&g, &t, &chi).unwrap(), vec![Int::from(2); 4]);
    }

    #[test]
    fn symmetric_group_table() {
        let g = FiniteGroup::generate(3, &[perm(&[1, 0, 2]), perm(&[1, 2, 0])]).unwrap();
        let t = CharacterTable::for_group(&g).unwrap();
        let mut dims = t.dims(&g);
        dims.sort();
        assert_eq!(dims, vec![Int::from(1), Int::from(1), Int::from(2)]);
    }

    #[test]
    fn s4_and_s5_tables_verify() {
        let s4 = FiniteGroup::generate(4, &[perm(&[1, 0, 2, 3]), perm(&[1, 2, 3, 0])]).unwrap();
        assert_eq!(CharacterTable::for_group(&s4).unwrap().source, "S4");
        let s5 = FiniteGroup::generate(5, &[perm(&[1, 0, 2, 3, 4]), perm(&[1, 2, 3, 4, 0])]).unwrap();
        assert_eq!(CharacterTable::for_group(&s5).unwrap().source, "S5");
    }

    #[test]
    fn dihedral_tables_verify() {
        let rot = AffineMap::from_rows(&[vec![0, -1], vec![1, 0]], &[0, 0]).unwrap();
        let refl = AffineMap::from_rows(&[vec![1, 0], vec![0, -1]], &[0, 0]).unwrap();
        let d4 = FiniteGroup::generate(2, &[rot, refl.clone()]).unwrap();
        assert_eq!(CharacterTable::for_group(&d4).unwrap().source, "D4");
        let r6 = AffineMap::from_rows(&[vec![1, -1], vec![1, 0]], &[0, 0]).unwrap();
        let s = AffineMap::from_rows(&[vec![0, 1], vec![1, 0]], &[0, 0]).unwrap();
        let d6 = FiniteGroup::generate(2, &[r6, s]).unwrap();
        assert_eq!(CharacterTable::for_group(&d6).unwrap().source, "D6");
    }

    #[test]
    fn bad_table_and_bad_decomposition() {
        let g = klein();
        let t = CharacterTable::for_group(&g).unwrap();
        let half = ClassFunction::from_ints(&[1, 0, 0, 0]);
        assert!(matches!(decompose(&g, &t, &half), Err(Error::NotVirtualCharacter(_))));
        let mut bad = t.clone();
        bad.chars[1] = bad.chars[0].clone();
        assert!(matches!(bad.verify(&g), Err(Error::TableInvalid(_))));
        assert!(matches!(induce(&g, &[0, 1], &[Cyclo::one(), Cyclo::one()]), Err(Error::NotASubgroup(_)) | Ok(_)));
        assert!(matches!(induce(&g, &[1], &[Cyclo::one()]), Err(Error::NotASubgroup(_))));
    }

    #[test]
    fn induced_trivial_is_permutation() {
        let g = FiniteGroup::generate(3, &[perm(&[1, 0, 2]), perm(&[1, 2, 0])]).unwrap();
        let ind = induce(&g, &[0], &[Cyclo::one()]).unwrap();
        assert_eq!(ind, ClassFunction::regular(&g));
    }

    #[test]
    fn swap_det_series() {
        let g = FiniteGroup::generate(2, &[perm(&[1, 0])]).unwrap();
        let d = det_series(&g);
        assert_eq!(d[g.class_of(0)], Poly::from_ints(&[1, -3, 3, -1]));
        assert_eq!(d[1 - g.class_of(0)], Poly::from_ints(&[1, -1, -1, 1]));
    }

    #[test]
    fn class_function_json_round_trip() {
        let chi = ClassFunction { values: vec![Cyclo::int(2), Cyclo::root(3, 1), Cyclo::from_coeffs(4, vec![rat(1), Rat::new(1.into(), 2.into())])] };
        let text = serde_json::to_string(&chi).unwrap();
        assert_eq!(text, r#"[2,{"conductor":3,"coeffs":[0,1]},{"conductor":4,"coeffs":[1,"1/2"]}]"#);
        assert_eq!(serde_json::from_str::<ClassFunction>(&text).unwrap(), chi);
    }

}

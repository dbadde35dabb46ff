//! The metacyclic groups `G_{m,r} = ⟨X, Y | Xᵐ = 1, Yⁿ = Xᵗ, YXY⁻¹ = Xʳ⟩`
//! and the obstruction they meet inside degree-`p` division algebras.
//!
//! Elements are kept in the normal form `XᵃYᵇ` with `0 ≤ a < m` and
//! `0 ≤ b < n`, rewritten with `YX = XʳY` and `Yⁿ = Xᵗ`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DGroupParams {
    pub m: u64,
    pub r: u64,
    /// `gcd(r − 1, m)`.
    pub s: u64,
    /// `m / s`.
    pub t: u64,
    /// Multiplicative order of `r` modulo `m`.
    pub n: u64,
}

/// `XᵃYᵇ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DGroupElement {
    pub a: u64,
    pub b: u64,
}

impl fmt::Display for DGroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X^{}Y^{}", self.a, self.b)
    }
}

fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let (mut acc, mut x) = (1 % m, base % m);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * x % m;
        }
        x = x * x % m;
        exp >>= 1;
    }
    acc
}

/// Multiplicative order of `r` modulo `m`, for `gcd(r, m) = 1`.
pub fn multiplicative_order(r: u64, m: u64) -> u64 {
    if m == 1 {
        return 1;
    }
    let mut x = r % m;
    let mut k = 1;
    while x != 1 {
        x = x * r % m;
        k += 1;
    }
    k
}

/// `(m, r)` with `gcd(m, r) = 1` and `r < m`; the trivial group is `(1, 1)`.
pub fn validate(m: u64, r: u64) -> Result<DGroupParams> {
    if m == 0 || r == 0 {
        return Err(Error::InvalidParameter("m and r must be positive".into()));
    }
    let trivial = m == 1 && r == 1;
    if !trivial && r >= m {
        return Err(Error::InvalidParameter(format!("r = {r} must be less than m = {m}")));
    }
    if m.gcd(&r) != 1 {
        return Err(Error::InvalidParameter(format!("gcd({m}, {r}) ≠ 1")));
    }
    let s = (r - 1).gcd(&m);
    Ok(DGroupParams {
        m,
        r,
        s,
        t: m / s,
        n: multiplicative_order(r, m),
    })
}

/// All valid parameter pairs with `m ≤ max_m`.
pub fn enumerate_params(max_m: u64) -> Vec<DGroupParams> {
    (1..=max_m)
        .flat_map(|m| (1..m.max(2)).filter_map(move |r| validate(m, r).ok()))
        .collect()
}

pub fn is_odd_prime(p: u64) -> bool {
    p > 2 && p % 2 == 1 && (3..).step_by(2).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl DGroupParams {
    pub fn identity(&self) -> DGroupElement {
        DGroupElement { a: 0, b: 0 }
    }

    pub fn x(&self) -> DGroupElement {
        DGroupElement { a: 1 % self.m, b: 0 }
    }

    pub fn y(&self) -> DGroupElement {
        if self.n == 1 {
            // Y = Y¹ = Xᵗ
            DGroupElement { a: self.t % self.m, b: 0 }
        } else {
            DGroupElement { a: 0, b: 1 }
        }
    }

    /// `XᵃYᵇ·Xᵃ′Yᵇ′ = X^{a + a′rᵇ}Y^{b+b′}`, folding `Yⁿ` into `Xᵗ`.
    pub fn multiply(&self, x: DGroupElement, y: DGroupElement) -> DGroupElement {
        let (m, n) = (self.m, self.n);
        let mut a = (x.a + y.a * pow_mod(self.r, x.b, m)) % m;
        let mut b = x.b + y.b;
        if b >= n {
            b -= n;
            a = (a + self.t) % m;
        }
        DGroupElement { a, b }
    }

    pub fn inverse(&self, x: DGroupElement) -> DGroupElement {
        let mut acc = self.identity();
        let mut prev = acc;
        loop {
            acc = self.multiply(acc, x);
            if acc == self.identity() {
                return prev;
            }
            prev = acc;
        }
    }

    pub fn element_order(&self, x: DGroupElement) -> u64 {
        let mut acc = x;
        let mut k = 1;
        while acc != self.identity() {
            acc = self.multiply(acc, x);
            k += 1;
        }
        k
    }

    /// `m·n`.
    pub fn order(&self) -> u64 {
        self.m * self.n
    }

    /// Closure of `{X, Y}` under [`multiply`](Self::multiply).
    pub fn elements(&self) -> Vec<DGroupElement> {
        let gens = [self.x(), self.y()];
        let mut seen = HashSet::from([self.identity()]);
        let mut out = vec![self.identity()];
        let mut queue = VecDeque::from([self.identity()]);
        while let Some(g) = queue.pop_front() {
            for h in gens {
                let k = self.multiply(g, h);
                if seen.insert(k) {
                    out.push(k);
                    queue.push_back(k);
                }
            }
        }
        out
    }

    pub fn is_cyclic(&self) -> bool {
        self.n == 1
    }

    pub fn max_element_order(&self) -> u64 {
        self.elements()
            .into_iter()
            .map(|x| self.element_order(x))
            .max()
            .unwrap_or(1)
    }

    /// `[G, G]` by closing the set of all commutators.
    pub fn commutator_subgroup(&self) -> Vec<DGroupElement> {
        let elems = self.elements();
        let mut gens = HashSet::new();
        for &x in &elems {
            for &y in &elems {
                let c = self.multiply(
                    self.multiply(x, y),
                    self.multiply(self.inverse(x), self.inverse(y)),
                );
                gens.insert(c);
            }
        }
        let gens: Vec<_> = gens.into_iter().collect();
        let mut seen = HashSet::from([self.identity()]);
        let mut queue = VecDeque::from([self.identity()]);
        while let Some(g) = queue.pop_front() {
            for &h in &gens {
                let k = self.multiply(g, h);
                if seen.insert(k) {
                    queue.push_back(k);
                }
            }
        }
        let mut out: Vec<_> = seen.into_iter().collect();
        out.sort();
        out
    }

    /// `|G/[G, G]|`, with `[G, G] = ⟨X^{r−1}⟩` of order `t`.
    pub fn abelianization_order(&self) -> u64 {
        self.order() / self.t
    }

    pub fn conjugacy_class_count(&self) -> usize {
        let elems = self.elements();
        let mut seen = HashSet::new();
        let mut classes = 0;
        for &x in &elems {
            if seen.contains(&x) {
                continue;
            }
            classes += 1;
            for &g in &elems {
                seen.insert(self.multiply(self.multiply(g, x), self.inverse(g)));
            }
        }
        classes
    }

    /// Degrees of the complex irreducible representations, ascending.
    ///
    /// By Clifford theory over the normal subgroup `⟨X⟩`, an orbit of size
    /// `k` of `j ↦ jr` on `Z/m` contributes `n/k` irreducibles of degree `k`.
    /// The result is checked against the abelianization, `Σd² = mn`,
    /// `d | n`, and for prime `n` against the forced count of degree-`n`
    /// summands.
    pub fn irreducible_degrees(&self) -> Result<Vec<u64>> {
        let (m, n) = (self.m, self.n);
        let mut visited = vec![false; m as usize];
        let mut degrees = Vec::new();
        for j in 0..m {
            if visited[j as usize] {
                continue;
            }
            let mut k = 0;
            let mut x = j;
            while !visited[x as usize] {
                visited[x as usize] = true;
                x = x * self.r % m;
                k += 1;
            }
            degrees.extend(std::iter::repeat_n(k, (n / k) as usize));
        }
        degrees.sort_unstable();

        let linear = degrees.iter().filter(|&&d| d == 1).count() as u64;
        let ab = self.order() / self.commutator_subgroup().len() as u64;
        if linear != ab || ab != self.abelianization_order() {
            return Err(Error::InvariantViolation(format!(
                "{linear} linear characters but |G^ab| = {ab}"
            )));
        }
        if degrees.iter().map(|d| d * d).sum::<u64>() != self.order() {
            return Err(Error::InvariantViolation("Σd² ≠ |G|".into()));
        }
        if degrees.iter().any(|d| n % d != 0) {
            return Err(Error::InvariantViolation("a degree does not divide n".into()));
        }
        if n > 1 && is_prime(n) {
            let rest = self.order() - ab;
            if rest % (n * n) != 0 {
                return Err(Error::InvariantViolation(format!(
                    "(mn − |G^ab|)/n² = {rest}/{} is not integral",
                    n * n
                )));
            }
            let big = degrees.iter().filter(|&&d| d == n).count() as u64;
            if big != rest / (n * n) {
                return Err(Error::InvariantViolation("degree-n count disagrees".into()));
            }
        }
        Ok(degrees)
    }

    /// Amitsur's necessary condition `n | p`.
    pub fn amitsur_filter(&self, p: u64) -> Result<bool> {
        check_prime(p)?;
        Ok(p % self.n == 0)
    }

    /// Whether a faithful `p`-dimensional representation splits into
    /// summands of degree `< p`. With `n = p` those summands are linear, so
    /// this holds exactly when the common kernel of all linear characters,
    /// `[G, G]`, is trivial.
    pub fn faithful_reducible_exists(&self, p: u64) -> Result<bool> {
        check_prime(p)?;
        let small: Vec<u64> = self
            .irreducible_degrees()?
            .into_iter()
            .filter(|&d| d < p)
            .collect();
        if small.iter().any(|&d| d != 1) {
            return Err(Error::InvalidParameter(format!(
                "n = {} is not the contested case n = p = {p}",
                self.n
            )));
        }
        Ok(self.commutator_subgroup().len() == 1)
    }

    pub fn second_type_verdict(&self, p: u64, split: Option<(u64, u64)>) -> Result<EmbeddabilityVerdict> {
        check_prime(p)?;
        if let Some((p1, p2)) = split {
            if p1 == 0 || p2 == 0 || p1 + p2 != p {
                return Err(Error::InvalidParameter(format!(
                    "signature split ({p1}, {p2}) is not a positive split of {p}"
                )));
            }
        }
        let mut trace = vec![format!(
            "m = {}, r = {}, s = {}, t = {}, n = {}",
            self.m, self.r, self.s, self.t, self.n
        )];
        if p % self.n != 0 {
            trace.push(format!("n = {} does not divide p = {p}", self.n));
            return Ok(EmbeddabilityVerdict {
                kind: VerdictKind::ExcludedByAmitsur,
                trace,
            });
        }
        if self.n == 1 {
            trace.push(format!("n = 1: the group is cyclic of order {}", self.m));
            return Ok(EmbeddabilityVerdict {
                kind: VerdictKind::CyclicPossible,
                trace,
            });
        }
        trace.push(format!("n = p = {p}: the group is nonabelian"));
        let degrees = self.irreducible_degrees()?;
        trace.push(format!("irreducible degrees {degrees:?} all divide p"));
        if self.faithful_reducible_exists(p)? {
            return Err(Error::InvariantViolation(
                "nonabelian group with a faithful sum of characters".into(),
            ));
        }
        trace.push(format!(
            "[G, G] has order {}: no faithful sum of linear characters, so no faithful representation into U({}) × U(1) conjugates",
            self.commutator_subgroup().len(),
            p - 1
        ));
        Ok(EmbeddabilityVerdict {
            kind: VerdictKind::ExcludedByReducibility,
            trace,
        })
    }
}

fn is_prime(n: u64) -> bool {
    n == 2 || is_odd_prime(n)
}

fn check_prime(p: u64) -> Result<()> {
    if is_odd_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{p} is not an odd prime")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VerdictKind {
    CyclicPossible,
    /// `n ∤ p`.
    ExcludedByAmitsur,
    /// Nonabelian with no faithful reducible `p`-dimensional representation.
    ExcludedByReducibility,
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            VerdictKind::CyclicPossible => "CyclicPossible",
            VerdictKind::ExcludedByAmitsur => "ExcludedByAmitsur",
            VerdictKind::ExcludedByReducibility => "ExcludedByReducibility",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddabilityVerdict {
    pub kind: VerdictKind,
    pub trace: Vec<String>,
}

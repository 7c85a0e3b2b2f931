use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::arith::fp::{gcd, kronecker, lcm, prime_divisors};
use crate::error::{Error, Result};

use super::matrix::{gl2_elements, gl2_order, ModMatrix};

/// Enumeration budget on |GL2(Z/NZ)|.
pub const ELEMENT_BUDGET: u64 = 10_000_000;

/// An open subgroup of GL2 of the profinite integers, stored as its image
/// modulo `n` (a multiple of its level).
#[derive(Clone)]
pub struct OpenSubgroup {
    n: u32,
    label: String,
    gens: Arc<OnceLock<Vec<ModMatrix>>>,
    /// Sorted by code.
    elements: Arc<Vec<ModMatrix>>,
    /// Membership bitmap indexed by matrix code.
    member: Arc<Vec<bool>>,
    level: u32,
}

impl fmt::Debug for OpenSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "OpenSubgroup({}, mod {}, level {}, order {})",
            self.label,
            self.n,
            self.level,
            self.order()
        )
    }
}

impl PartialEq for OpenSubgroup {
    fn eq(&self, o: &Self) -> bool {
        self.n == o.n && self.elements == o.elements
    }
}

impl Eq for OpenSubgroup {}

fn check_budget(n: u32) -> Result<()> {
    if n == 0 || n > 255 || gl2_order(n) > ELEMENT_BUDGET {
        return Err(Error::GroupTooLarge(n));
    }
    Ok(())
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Closure of a generating set under multiplication (finite, so inverses come free).
fn closure(n: u32, gens: &[ModMatrix]) -> Vec<bool> {
    let mut member = vec![false; (n as usize).pow(4)];
    let id = ModMatrix::identity(n);
    member[id.code() as usize] = true;
    let mut stack = vec![id];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = x.mul(g);
            let c = y.code() as usize;
            if !member[c] {
                member[c] = true;
                stack.push(y);
            }
        }
    }
    member
}

impl OpenSubgroup {
    fn from_member(n: u32, label: String, gens: Vec<ModMatrix>, member: Vec<bool>) -> OpenSubgroup {
        let elements: Vec<ModMatrix> = member
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(c, _)| ModMatrix::from_code(n, c as u32))
            .collect();
        let cell = OnceLock::new();
        if !gens.is_empty() || elements.len() == 1 {
            let _ = cell.set(gens);
        }
        let mut g = OpenSubgroup {
            n,
            label,
            gens: Arc::new(cell),
            elements: Arc::new(elements),
            member: Arc::new(member),
            level: n,
        };
        g.level = g.compute_level();
        g
    }

    /// Subgroup generated by `gens` modulo n.
    pub fn generated(n: u32, gens: &[ModMatrix]) -> Result<OpenSubgroup> {
        check_budget(n)?;
        for g in gens {
            if g.modulus() != n {
                return Err(Error::ModulusMismatch(n, g.modulus()));
            }
            if !g.is_invertible() {
                return Err(Error::NotInvertible(n));
            }
        }
        let member = closure(n, gens);
        let label = format!(
            "gens:N={n};{}",
            gens.iter()
                .map(|g| g.to_string())
                .collect::<Vec<_>>()
                .join(",")
        );
        Ok(Self::from_member(n, label, gens.to_vec(), member))
    }

    /// Subgroup cut out by a predicate that is known to define a group.
    pub fn from_predicate(
        n: u32,
        label: &str,
        pred: impl Fn(&ModMatrix) -> bool,
    ) -> Result<OpenSubgroup> {
        check_budget(n)?;
        let mut member = vec![false; (n as usize).pow(4)];
        for m in gl2_elements(n) {
            if pred(&m) {
                member[m.code() as usize] = true;
            }
        }
        if !member[ModMatrix::identity(n).code() as usize] {
            return Err(Error::BadSubgroupSpec(format!(
                "{label}: predicate excludes the identity"
            )));
        }
        Ok(Self::from_member(n, label.to_string(), Vec::new(), member))
    }

    /// Greedy generating set in code order.
    fn minimal_generators(&self) -> Vec<ModMatrix> {
        let mut gens = Vec::new();
        let mut cur = closure(self.n, &gens);
        for x in self.elements.iter() {
            if !cur[x.code() as usize] {
                gens.push(*x);
                cur = closure(self.n, &gens);
            }
        }
        gens
    }

    fn compute_level(&self) -> u32 {
        let n = self.n;
        for m in divisors(n) {
            // kernel of reduction mod m must lie in the group
            let step = m as i64;
            let k = (n / m) as i64;
            let mut ok = true;
            'outer: for a in 0..k {
                for b in 0..k {
                    for c in 0..k {
                        for d in 0..k {
                            let g =
                                ModMatrix::raw(n, 1 + a * step, b * step, c * step, 1 + d * step);
                            if g.is_invertible() && !self.member[g.code() as usize] {
                                ok = false;
                                break 'outer;
                            }
                        }
                    }
                }
            }
            if ok {
                return m;
            }
        }
        n
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> OpenSubgroup {
        self.label = label.into();
        self
    }

    /// Generators as given, or a greedy generating set in code order.
    pub fn generators(&self) -> &[ModMatrix] {
        self.gens.get_or_init(|| self.minimal_generators())
    }

    pub fn elements(&self) -> &[ModMatrix] {
        &self.elements
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn index(&self) -> u64 {
        gl2_order(self.n) / self.order()
    }

    pub fn contains(&self, m: &ModMatrix) -> Result<bool> {
        if m.modulus() != self.n {
            return Err(Error::ModulusMismatch(self.n, m.modulus()));
        }
        Ok(self.member[m.code() as usize])
    }

    /// Membership without the modulus check, for hot loops.
    pub fn contains_code(&self, code: u32) -> bool {
        self.member[code as usize]
    }

    /// Sorted list of determinants.
    pub fn det_image(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.elements.iter().map(ModMatrix::det).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// <p^2> inside det(G), the condition for X_G to have its supersingular
    /// points with level structure over F_{p^2}.
    pub fn is_admissible_fp2(&self, p: u64) -> Result<bool> {
        let n = u64::from(self.n);
        if gcd(p, n) != 1 {
            return Err(Error::NotCoprime {
                level: self.n,
                what: "characteristic",
                value: p,
            });
        }
        let dets = self.det_image();
        let p2 = (p % n) * (p % n) % n;
        let mut x = p2;
        loop {
            if !dets.contains(&(x as u32)) {
                return Ok(false);
            }
            if x == 1 % n {
                return Ok(true);
            }
            x = x * p2 % n;
        }
    }

    /// Preimage at a multiple of the modulus.
    pub fn lift(&self, m: u32) -> Result<OpenSubgroup> {
        if !m.is_multiple_of(self.n) {
            return Err(Error::ModulusMismatch(self.n, m));
        }
        if m == self.n {
            return Ok(self.clone());
        }
        let g = Self::from_predicate(m, &self.label, |x| {
            self.member[x.reduce(self.n).code() as usize]
        })?;
        Ok(g.with_label(self.label.clone()))
    }

    /// Image modulo a divisor m of the modulus.
    pub fn reduce(&self, m: u32) -> Result<OpenSubgroup> {
        if m == 0 || !self.n.is_multiple_of(m) {
            return Err(Error::ModulusMismatch(self.n, m));
        }
        let mut member = vec![false; (m as usize).pow(4)];
        for x in self.elements.iter() {
            member[x.reduce(m).code() as usize] = true;
        }
        Ok(Self::from_member(m, self.label.clone(), Vec::new(), member))
    }

    /// Copy stored at its own level.
    pub fn at_level(&self) -> OpenSubgroup {
        self.reduce(self.level).expect("level divides modulus")
    }

    pub fn intersect(&self, o: &OpenSubgroup) -> Result<OpenSubgroup> {
        let m = lcm(u64::from(self.n), u64::from(o.n)) as u32;
        let (a, b) = (self.lift(m)?, o.lift(m)?);
        let member: Vec<bool> = a
            .member
            .iter()
            .zip(b.member.iter())
            .map(|(x, y)| *x && *y)
            .collect();
        Ok(Self::from_member(
            m,
            format!("({})&({})", self.label, o.label),
            Vec::new(),
            member,
        ))
    }

    pub fn join(&self, o: &OpenSubgroup) -> Result<OpenSubgroup> {
        let m = lcm(u64::from(self.n), u64::from(o.n)) as u32;
        let (a, b) = (self.lift(m)?, o.lift(m)?);
        let gens: Vec<ModMatrix> = a
            .generators()
            .iter()
            .chain(b.generators())
            .copied()
            .collect();
        let g = Self::generated(m, &gens)?;
        Ok(g.with_label(format!("<{},{}>", self.label, o.label)))
    }

    /// G intersected with SL2.
    pub fn sl_part(&self) -> OpenSubgroup {
        let member: Vec<bool> = self
            .member
            .iter()
            .enumerate()
            .map(|(c, &b)| b && ModMatrix::from_code(self.n, c as u32).det() == 1 % self.n)
            .collect();
        Self::from_member(self.n, format!("({})&SL2", self.label), Vec::new(), member)
    }

    pub fn is_subgroup_of(&self, o: &OpenSubgroup) -> Result<bool> {
        let m = lcm(u64::from(self.n), u64::from(o.n)) as u32;
        let (a, b) = (self.lift(m)?, o.lift(m)?);
        Ok(a.elements.iter().all(|x| b.member[x.code() as usize]))
    }

    /// Images at the prime-power factors of the modulus.
    pub fn crt_split(&self) -> Vec<OpenSubgroup> {
        let n = u64::from(self.n);
        let primes = prime_divisors(n);
        if primes.len() <= 1 {
            return vec![self.clone()];
        }
        primes
            .into_iter()
            .map(|q| {
                let mut qk = 1;
                while n % (qk * q) == 0 {
                    qk *= q;
                }
                self.reduce(qk as u32).expect("divisor")
            })
            .collect()
    }

    /// Whether G is the product of its prime-power components.
    pub fn is_product(&self) -> bool {
        self.crt_split()
            .iter()
            .map(OpenSubgroup::order)
            .product::<u64>()
            == self.order()
    }
}

/// [G:H] = [G:H1][G:H2] with G = <H1,H2> and H = H1 & H2.
pub fn is_independent(h1: &OpenSubgroup, h2: &OpenSubgroup) -> Result<bool> {
    let g = h1.join(h2)?;
    let h = h1.intersect(h2)?;
    let (a, b) = (h1.lift(g.n)?, h2.lift(g.n)?);
    Ok(u128::from(a.order()) * u128::from(b.order())
        == u128::from(g.order()) * u128::from(h.order()))
}

/// The same identity after intersecting every group with SL2.
pub fn is_geometrically_independent(h1: &OpenSubgroup, h2: &OpenSubgroup) -> Result<bool> {
    let g = h1.join(h2)?;
    let a = h1.lift(g.n)?.sl_part();
    let b = h2.lift(g.n)?.sl_part();
    let h = h1.intersect(h2)?.lift(g.n)?.sl_part();
    let gs = g.sl_part();
    Ok(u128::from(a.order()) * u128::from(b.order())
        == u128::from(gs.order()) * u128::from(h.order()))
}

/// Least d > 1 that is a non-residue modulo every odd prime dividing n.
fn common_nonresidue(n: u32) -> i64 {
    let primes: Vec<u64> = prime_divisors(u64::from(n))
        .into_iter()
        .filter(|&q| q != 2)
        .collect();
    (2..)
        .find(|&r| primes.iter().all(|&q| kronecker(r, q) == -1))
        .expect("exists by CRT")
}

/// Least D = 5 mod 8 that is a non-residue modulo every odd prime dividing n.
fn nonsplit_discriminant(n: u32) -> i64 {
    let primes: Vec<u64> = prime_divisors(u64::from(n))
        .into_iter()
        .filter(|&q| q != 2)
        .collect();
    (0..)
        .map(|k| 5 + 8 * k)
        .find(|&d| primes.iter().all(|&q| kronecker(d, q) == -1))
        .expect("exists by CRT")
}

/// Generator W of an order of discriminant D acting on the basis (1, w),
/// w = (D + sqrt D)/2, and the conjugation sigma.
fn order_matrices(n: u32, d: i64) -> (ModMatrix, ModMatrix) {
    let w = ModMatrix::raw(n, 0, -(d * d - d) / 4, 1, d);
    let sigma = ModMatrix::raw(n, 1, d, 0, -1);
    (w, sigma)
}

/// Cartan-type data (W, sigma) for the nonsplit Cartan at level n.
fn nonsplit_data(n: u32) -> (ModMatrix, ModMatrix) {
    if n % 2 == 1 {
        let r = common_nonresidue(n);
        (ModMatrix::raw(n, 0, r, 1, 0), ModMatrix::diag(n, 1, -1))
    } else {
        order_matrices(n, nonsplit_discriminant(n))
    }
}

fn ring_units(n: u32, w: &ModMatrix) -> impl Fn(&ModMatrix) -> bool {
    let [w0, w1, w2, w3] = w.entries();
    // x I + y W = [[x + y w0, y w1], [y w2, x + y w3]]; recover (x, y) from column 1
    let n_ = n;
    move |m: &ModMatrix| {
        let [a, b, c, d] = m.entries();
        (0..n_).any(|y| {
            let ok_bc = (y * w1) % n_ == b && (y * w2) % n_ == c;
            if !ok_bc {
                return false;
            }
            let x = (a + n_ * n_ - (y * w0) % n_) % n_;
            (x + y * w3) % n_ == d
        })
    }
}

/// The standard subgroups by name.
pub fn standard(name: &str, n: u32, param: Option<i64>) -> Result<OpenSubgroup> {
    let pm1 = |a: u32| a == 1 % n || a == (n - 1) % n;
    let label = match param {
        Some(d) => format!("{name}:{d}"),
        None => format!("{name}:{n}"),
    };
    match name {
        "full" => OpenSubgroup::from_predicate(n, &label, |_| true),
        "G" => OpenSubgroup::from_predicate(n, &label, |m| pm1(m.a()) && m.b() == 0 && m.c() == 0),
        "B1" => OpenSubgroup::from_predicate(n, &label, |m| pm1(m.a()) && m.c() == 0),
        "B0" => OpenSubgroup::from_predicate(n, &label, |m| m.c() == 0),
        "Cs" => OpenSubgroup::from_predicate(n, &label, |m| m.b() == 0 && m.c() == 0),
        "Cns" => {
            let (w, _) = nonsplit_data(n);
            OpenSubgroup::from_predicate(n, &label, ring_units(n, &w))
        }
        "Cns+" => {
            let (w, sigma) = nonsplit_data(n);
            let inside = ring_units(n, &w);
            OpenSubgroup::from_predicate(n, &label, move |m| inside(m) || inside(&m.mul(&sigma)))
        }
        "cartan" => {
            let d = param
                .ok_or_else(|| Error::BadSubgroupSpec("cartan needs a discriminant".into()))?;
            if d.rem_euclid(4) > 1 {
                return Err(Error::BadSubgroupSpec(format!("{d} is not a discriminant")));
            }
            let (w, _) = order_matrices(n, d);
            OpenSubgroup::from_predicate(n, &format!("cartan:{n},{d}"), ring_units(n, &w))
        }
        "CnsTwist2" => {
            let d = param.ok_or_else(|| Error::BadSubgroupSpec("CnsTwist2 needs d".into()))?;
            cns_twist2(d)
        }
        _ => Err(Error::BadSubgroupSpec(format!(
            "unknown subgroup name {name}"
        ))),
    }
}

fn is_squarefree(d: i64) -> bool {
    let a = d.unsigned_abs();
    a != 0 && crate::arith::fp::factor(a).iter().all(|&(_, e)| e == 1)
}

/// {g : chi_D(det g) eps(g mod 2) = 1}, eps the sign character of
/// GL2(F2) = S3 whose kernel is the nonsplit Cartan C_ns(2).
pub fn cns_twist2(d: i64) -> Result<OpenSubgroup> {
    if !is_squarefree(d) {
        return Err(Error::BadSubgroupSpec(format!(
            "CnsTwist2: {d} is not squarefree"
        )));
    }
    let disc = if d.rem_euclid(4) == 1 { d } else { 4 * d };
    let n = lcm(2, disc.unsigned_abs()) as u32;
    check_budget(n)?;
    let c3 = |m: &ModMatrix| {
        let r = m.reduce(2);
        let e = r.entries();
        matches!(e, [1, 0, 0, 1] | [0, 1, 1, 1] | [1, 1, 1, 0])
    };
    OpenSubgroup::from_predicate(n, &format!("CnsTwist2:{d}"), |m| {
        let chi = kronecker(disc, u64::from(m.det()));
        let eps = if c3(m) { 1 } else { -1 };
        chi * eps == 1
    })
}

/// Parses `name:params`, e.g. `B0:7`, `Cns+:13`, `CnsTwist2:-1`,
/// `cartan:15,-7`, `gens:N=5;[[1,0],[0,2]],[[4,0],[0,4]]`.
pub fn parse_spec(spec: &str) -> Result<OpenSubgroup> {
    let bad = || Error::BadSubgroupSpec(spec.to_string());
    let (name, params) = spec.split_once(':').ok_or_else(bad)?;
    let name = name.trim();
    let params = params.trim();
    match name {
        "gens" => {
            let (lhs, rest) = params.split_once(';').unwrap_or((params, ""));
            let n: u32 = lhs
                .trim()
                .strip_prefix("N=")
                .ok_or_else(bad)?
                .trim()
                .parse()
                .map_err(|_| bad())?;
            let nums: Vec<i64> = rest
                .split(|c: char| !(c.is_ascii_digit() || c == '-'))
                .filter(|s| !s.is_empty())
                .map(|s| s.parse().map_err(|_| bad()))
                .collect::<Result<_>>()?;
            if !nums.len().is_multiple_of(4) {
                return Err(bad());
            }
            let gens = nums
                .chunks(4)
                .map(|c| ModMatrix::new(n, c[0], c[1], c[2], c[3]))
                .collect::<Result<Vec<_>>>()?;
            Ok(OpenSubgroup::generated(n, &gens)?.with_label(spec))
        }
        "CnsTwist2" => {
            let d: i64 = params.parse().map_err(|_| bad())?;
            cns_twist2(d)
        }
        "Weber" if params == "48" => super::weber(),
        "cartan" => {
            let (n, d) = params.split_once(',').ok_or_else(bad)?;
            let n: u32 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            standard("cartan", n, Some(d))
        }
        "full" | "G" | "B1" | "B0" | "Cs" | "Cns" | "Cns+" => {
            let n: u32 = params.parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(bad());
            }
            standard(name, n, None)
        }
        _ => Err(bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag5() -> OpenSubgroup {
        let gens = [ModMatrix::diag(5, 1, 2), ModMatrix::scalar(5, -1)];
        OpenSubgroup::generated(5, &gens).unwrap()
    }

    #[test]
    fn generated_examples() {
        let g = diag5();
        assert_eq!(g.order(), 8);
        assert_eq!(g.index(), 60);
        assert_eq!(g, standard("G", 5, None).unwrap());
        let t = OpenSubgroup::generated(2, &[]).unwrap();
        assert_eq!(t.order(), 1);
        assert_eq!(t.level(), 2);
        let full = OpenSubgroup::generated(6, &gl2_elements(6)).unwrap();
        assert_eq!(full.level(), 1);
        assert!(OpenSubgroup::generated(6, &[ModMatrix::raw(6, 2, 0, 0, 1)]).is_err());
    }

    #[test]
    fn standard_indices() {
        assert_eq!(standard("B0", 2, None).unwrap().index(), 3);
        assert_eq!(standard("Cns", 2, None).unwrap().index(), 2);
        for n in [2u32, 3, 4, 5, 7, 8, 9] {
            assert_eq!(standard("full", n, None).unwrap().index(), 1);
            assert_eq!(standard("B0", n, None).unwrap().level(), n);
        }
        for q in [3u32, 5, 7, 11] {
            let q64 = u64::from(q);
            assert_eq!(standard("Cns", q, None).unwrap().order(), q64 * q64 - 1);
            assert_eq!(
                standard("Cns+", q, None).unwrap().order(),
                2 * (q64 * q64 - 1)
            );
            assert_eq!(standard("Cs", q, None).unwrap().order(), (q64 - 1).pow(2));
        }
        // nonsplit Cartan at 4: units of Z[w]/4 with w^2 - w + 1 = 0
        assert_eq!(standard("Cns", 4, None).unwrap().order(), 12);
        assert_eq!(standard("Cns", 8, None).unwrap().order(), 48);
        assert_eq!(standard("cartan", 5, Some(1)).unwrap().order(), 16);
        assert!(standard("cartan", 5, Some(2)).is_err());
        assert!(standard("Borel", 5, None).is_err());
    }

    #[test]
    fn borel_meets_normalizer_in_scalars_and_reflection() {
        for n in [3u32, 5, 7, 9, 11, 13] {
            let h = standard("B0", n, None)
                .unwrap()
                .intersect(&standard("Cns+", n, None).unwrap())
                .unwrap();
            let mut gens: Vec<ModMatrix> = (1..n)
                .filter(|&x| gcd(u64::from(x), u64::from(n)) == 1)
                .map(|x| ModMatrix::scalar(n, i64::from(x)))
                .collect();
            gens.push(ModMatrix::diag(n, -1, 1));
            assert_eq!(h, OpenSubgroup::generated(n, &gens).unwrap(), "n={n}");
        }
    }

    #[test]
    fn determinant_images() {
        for n in [2u32, 4, 5, 6, 7, 8] {
            let units: Vec<u32> = (0..n)
                .filter(|&x| gcd(u64::from(x), u64::from(n)) == 1)
                .collect();
            assert_eq!(standard("B0", n, None).unwrap().det_image(), units);
        }
        assert!(standard("full", 1, None)
            .unwrap()
            .contains(&ModMatrix::identity(1))
            .unwrap());
        assert!(standard("B0", 5, None)
            .unwrap()
            .contains(&ModMatrix::identity(6))
            .is_err());
    }

    #[test]
    fn admissibility() {
        for p in [5u64, 7, 11, 13, 101] {
            let g = OpenSubgroup::generated(24, &[]).unwrap();
            assert!(g.is_admissible_fp2(p).unwrap());
        }
        let squares = OpenSubgroup::generated(5, &[ModMatrix::diag(5, 1, 4)]).unwrap();
        assert_eq!(squares.det_image(), vec![1, 4]);
        assert!(squares.is_admissible_fp2(2).unwrap());
        let sl = standard("full", 5, None).unwrap().sl_part();
        assert!(!sl.is_admissible_fp2(2).unwrap());
        assert!(sl.is_admissible_fp2(11).unwrap());
        assert!(sl.is_admissible_fp2(5).is_err());
    }

    #[test]
    fn intersect_and_join_at_two() {
        let b = standard("B0", 2, None).unwrap();
        let c = standard("Cns", 2, None).unwrap();
        assert_eq!(b.intersect(&c).unwrap().order(), 1);
        assert_eq!(b.join(&c).unwrap().order(), 6);
        assert_eq!(b.intersect(&b).unwrap(), b);
        assert_eq!(cns_twist2(1).unwrap(), c);
    }

    #[test]
    fn independence_examples() {
        let pair = |n| {
            (
                standard("B0", n, None).unwrap(),
                standard("Cns", n, None).unwrap(),
            )
        };
        let (b, c) = pair(2);
        assert!(is_independent(&b, &c).unwrap());
        assert!(is_geometrically_independent(&b, &c).unwrap());
        let (b, c) = pair(4);
        assert!(is_independent(&b, &c).unwrap());
        assert!(!is_geometrically_independent(&b, &c).unwrap());
        for (l, expect) in [(3u32, true), (5, false), (7, true), (11, true), (13, false)] {
            let b = standard("B0", l, None).unwrap();
            let c = standard("Cns+", l, None).unwrap();
            assert!(is_independent(&b, &c).unwrap(), "l={l}");
            assert_eq!(
                is_geometrically_independent(&b, &c).unwrap(),
                expect,
                "l={l}"
            );
        }
    }

    #[test]
    fn crt_split_components() {
        let g = standard("B0", 6, None).unwrap();
        let parts = g.crt_split();
        assert_eq!(
            parts.iter().map(|h| h.modulus()).collect::<Vec<_>>(),
            vec![2, 3]
        );
        assert_eq!(parts.iter().map(|h| h.index()).product::<u64>(), g.index());
        assert!(g.is_product());
        let b9 = standard("B0", 9, None).unwrap();
        assert_eq!(b9.crt_split(), vec![b9.clone()]);
        // entangles the sign character mod 2 with chi_{-3}(det) mod 3
        let twisted = cns_twist2(-3).unwrap();
        assert_eq!(twisted.modulus(), 6);
        assert_eq!(twisted.index(), 2);
        assert!(!twisted.is_product());
    }

    #[test]
    fn parse_grammar() {
        let g = parse_spec("gens:N=5;[[1,0],[0,2]],[[4,0],[0,4]]").unwrap();
        assert_eq!(g, diag5());
        assert_eq!(parse_spec("B0:7").unwrap().index(), 8);
        assert_eq!(parse_spec("Cns+:3").unwrap().order(), 16);
        assert_eq!(parse_spec("cartan:5,1").unwrap().order(), 16);
        assert_eq!(parse_spec("CnsTwist2:-1").unwrap().modulus(), 4);
        assert_eq!(parse_spec("G:5").unwrap(), diag5());
        for bad in [
            "",
            "B0",
            "B0:x",
            "nope:3",
            "gens:5;[[1,0],[0,1]]",
            "gens:N=5;[[1,0],[0]]",
            "CnsTwist2:4",
        ] {
            assert!(parse_spec(bad).is_err(), "{bad}");
        }
    }
}

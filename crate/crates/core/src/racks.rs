//! Finite groups, pointed racks, group-rack triples and group crossed modules,
//! verified by exhaustive enumeration.
//!
//! Elements are dense indices `0..size`; a group's unit is index 0. Law
//! residuals are `0.0` (holds) or `1.0` (fails) so finite reports share the
//! [`ValidityReport`] shape of the numerical checkers.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::ValidityReport;

fn fails(ok: bool) -> f64 {
    if ok {
        0.0
    } else {
        1.0
    }
}

fn check_range(name: &str, table: &[usize], bound: usize) -> Result<()> {
    match table.iter().position(|&x| x >= bound) {
        Some(p) => Err(Error::shape(format!("{name}[{p}] = {} is out of range 0..{bound}", table[p]))),
        None => Ok(()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteGroup {
    size: usize,
    mul: Vec<usize>,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Builds from a row-major `size × size` table. Entries must be in range
    /// and index 0 must act as the unit; the remaining axioms are left to
    /// [`FiniteGroup::check`].
    pub fn new(size: usize, mul: Vec<usize>) -> Result<Self> {
        if size == 0 {
            return Err(Error::shape("group must be nonempty"));
        }
        if mul.len() != size * size {
            return Err(Error::shape(format!("multiplication table has {} entries, expected {}", mul.len(), size * size)));
        }
        check_range("mul_table", &mul, size)?;
        let inverse = (0..size)
            .map(|a| (0..size).find(|&b| mul[a * size + b] == 0 && mul[b * size + a] == 0).unwrap_or(usize::MAX))
            .collect::<Vec<_>>();
        if let Some(a) = inverse.iter().position(|&b| b == usize::MAX) {
            return Err(Error::shape(format!("element {a} has no inverse with respect to unit 0")));
        }
        Ok(Self { size, mul, inverse })
    }

    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        if rows.iter().any(|r| r.len() != rows.len()) {
            return Err(Error::shape("multiplication table must be square"));
        }
        Self::new(rows.len(), rows.concat())
    }

    /// Group of permutations under composition `(p·q)(x) = p(q(x))`. The list
    /// must be closed and start with the identity.
    pub fn from_permutations(perms: &[Vec<usize>]) -> Result<Self> {
        let index: HashMap<&[usize], usize> = perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
        let n = perms.len();
        let mut mul = Vec::with_capacity(n * n);
        for p in perms {
            for q in perms {
                let pq: Vec<usize> = q.iter().map(|&x| p[x]).collect();
                let k = index
                    .get(pq.as_slice())
                    .ok_or_else(|| Error::shape("permutation list is not closed under composition"))?;
                mul.push(*k);
            }
        }
        Self::new(n, mul)
    }

    pub fn cyclic(n: usize) -> Self {
        Self::new(n, (0..n * n).map(|k| (k / n + k % n) % n).collect()).expect("cyclic table is valid")
    }

    /// All permutations of `0..n` in lexicographic order (identity first).
    pub fn symmetric(n: usize) -> Self {
        Self::from_permutations(&permutations(n)).expect("symmetric group is closed")
    }

    /// Even permutations of `0..n`, lexicographic.
    pub fn alternating(n: usize) -> Self {
        let even: Vec<Vec<usize>> = permutations(n).into_iter().filter(|p| parity(p) == 0).collect();
        Self::from_permutations(&even).expect("alternating group is closed")
    }

    /// Symmetries of the square acting on its vertices `0..4`.
    pub fn dihedral4() -> Self {
        let perms: Vec<Vec<usize>> = permutations(4)
            .into_iter()
            .filter(|p| (0..4).all(|i| (p[(i + 1) % 4] + 4 - p[i]) % 4 == 1 || (p[i] + 4 - p[(i + 1) % 4]) % 4 == 1))
            .collect();
        Self::from_permutations(&perms).expect("dihedral group is closed")
    }

    /// `{±1, ±i, ±j, ±k}` indexed as `sign·4 + unit` with units `1, i, j, k`.
    pub fn quaternion8() -> Self {
        // unit products: (sign, unit) for u·v with u, v ∈ {1, i, j, k}
        const UNIT: [[(usize, usize); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        let mul = (0..64)
            .map(|k| {
                let (a, b) = (k / 8, k % 8);
                let (s, u) = UNIT[a % 4][b % 4];
                ((a / 4 + b / 4 + s) % 2) * 4 + u
            })
            .collect();
        Self::new(8, mul).expect("quaternion table is valid")
    }

    /// The groups used by the corpus: `Z1..Z12`, `S3`, `D4`, `Q8`, `A4`.
    pub fn catalog() -> Vec<(String, FiniteGroup)> {
        let mut out: Vec<(String, FiniteGroup)> = (1..=12).map(|n| (format!("Z{n}"), Self::cyclic(n))).collect();
        out.push(("S3".into(), Self::symmetric(3)));
        out.push(("D4".into(), Self::dihedral4()));
        out.push(("Q8".into(), Self::quaternion8()));
        out.push(("A4".into(), Self::alternating(4)));
        out
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn unit(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `g x g⁻¹`.
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn mul_table(&self) -> &[usize] {
        &self.mul
    }

    pub fn check(&self) -> ValidityReport<f64> {
        let n = self.size;
        let mut r = ValidityReport::new(0.0);
        for law in ["associativity", "unit", "inverse"] {
            r.declare(law);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let ok = self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c));
                    r.record("associativity", &[a, b, c], fails(ok));
                }
            }
            r.record("unit", &[a], fails(self.mul(0, a) == a && self.mul(a, 0) == a));
            r.record("inverse", &[a], fails(self.mul(a, self.inv(a)) == 0 && self.mul(self.inv(a), a) == 0));
        }
        r
    }

    /// True iff `subset` contains the unit and is closed under products and inverses.
    pub fn is_subgroup(&self, subset: &[usize]) -> bool {
        let set: BTreeSet<usize> = subset.iter().copied().collect();
        set.contains(&0)
            && set.iter().all(|&a| a < self.size && set.contains(&self.inv(a)))
            && set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    /// True iff `map: self → other` preserves products.
    pub fn is_homomorphism(&self, other: &FiniteGroup, map: &[usize]) -> bool {
        map.len() == self.size
            && map.iter().all(|&x| x < other.size)
            && (0..self.size).all(|a| (0..self.size).all(|b| map[self.mul(a, b)] == other.mul(map[a], map[b])))
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let n = used.len();
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn parity(p: &[usize]) -> usize {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in (i + 1)..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2
}

/// Finite binary operation `x ▷ y`, optionally pointed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteRack {
    size: usize,
    op: Vec<usize>,
    basepoint: Option<usize>,
}

impl FiniteRack {
    pub fn new(size: usize, op: Vec<usize>, basepoint: Option<usize>) -> Result<Self> {
        if op.len() != size * size {
            return Err(Error::shape(format!("rack table has {} entries, expected {}", op.len(), size * size)));
        }
        check_range("op_table", &op, size)?;
        if let Some(e) = basepoint.filter(|&e| e >= size) {
            return Err(Error::shape(format!("basepoint {e} out of range 0..{size}")));
        }
        Ok(Self { size, op, basepoint })
    }

    /// `x ▷ y = y`.
    pub fn trivial(size: usize, basepoint: Option<usize>) -> Result<Self> {
        Self::new(size, (0..size * size).map(|k| k % size).collect(), basepoint)
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn basepoint(&self) -> Option<usize> {
        self.basepoint
    }

    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.op[x * self.size + y]
    }

    pub fn table(&self) -> &[usize] {
        &self.op
    }

    /// Overwrites one entry; the result may violate the rack laws.
    pub fn with_entry(&self, x: usize, y: usize, value: usize) -> Result<Self> {
        let mut op = self.op.clone();
        op[x * self.size + y] = value;
        Self::new(self.size, op, self.basepoint)
    }

    pub fn is_trivial(&self) -> bool {
        (0..self.size).all(|x| (0..self.size).all(|y| self.op(x, y) == y))
    }

    /// Orbits of the group generated by the left translations `x ▷ −`.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut label = vec![usize::MAX; self.size];
        let mut out = Vec::new();
        for start in 0..self.size {
            if label[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut orbit = vec![start];
            label[start] = id;
            let mut i = 0;
            while i < orbit.len() {
                let y = orbit[i];
                for x in 0..self.size {
                    for z in [self.op(x, y)].into_iter().chain((0..self.size).filter(|&z| self.op(x, z) == y)) {
                        if label[z] == usize::MAX {
                            label[z] = id;
                            orbit.push(z);
                        }
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }
}

/// Self-distributivity over all `size³` triples, bijectivity of left
/// translations and, when pointed, `e ▷ x = x` and `x ▷ e = e`.
pub fn check_rack(r: &FiniteRack) -> ValidityReport<f64> {
    let n = r.size;
    let mut rep = ValidityReport::new(0.0);
    rep.declare("self_distributivity");
    rep.declare("left_bijectivity");
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let ok = r.op(x, r.op(y, z)) == r.op(r.op(x, y), r.op(x, z));
                rep.record("self_distributivity", &[x, y, z], fails(ok));
            }
        }
        let image: BTreeSet<usize> = (0..n).map(|y| r.op(x, y)).collect();
        rep.record("left_bijectivity", &[x], fails(image.len() == n));
    }
    if let Some(e) = r.basepoint {
        rep.declare("basepoint_left");
        rep.declare("basepoint_right");
        for x in 0..n {
            rep.record("basepoint_left", &[x], fails(r.op(e, x) == x));
            rep.record("basepoint_right", &[x], fails(r.op(x, e) == e));
        }
    }
    rep
}

/// `x ▷ y = x y x⁻¹`, pointed at the unit.
pub fn conjugation_rack(g: &FiniteGroup) -> FiniteRack {
    let n = g.size();
    let op = (0..n * n).map(|k| g.conj(k / n, k % n)).collect();
    FiniteRack::new(n, op, Some(g.unit())).expect("conjugation table is in range")
}

/// `(G, X, Θ)` with a `G`-set `X`, `Θ: X → G` and basepoint `e ∈ X`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupRackTriple {
    group: FiniteGroup,
    x_size: usize,
    /// `action[g·x_size + x] = g·x`.
    action: Vec<usize>,
    theta: Vec<usize>,
    basepoint: usize,
}

impl GroupRackTriple {
    pub fn new(group: FiniteGroup, x_size: usize, action: Vec<usize>, theta: Vec<usize>, basepoint: usize) -> Result<Self> {
        if action.len() != group.size() * x_size {
            return Err(Error::shape(format!(
                "action table has {} entries, expected {}",
                action.len(),
                group.size() * x_size
            )));
        }
        if theta.len() != x_size {
            return Err(Error::shape(format!("theta table has {} entries, expected {x_size}", theta.len())));
        }
        check_range("action_table", &action, x_size)?;
        check_range("theta_table", &theta, group.size())?;
        if basepoint >= x_size {
            return Err(Error::shape(format!("basepoint {basepoint} out of range 0..{x_size}")));
        }
        Ok(Self { group, x_size, action, theta, basepoint })
    }

    /// `X = G` under conjugation with `Θ = id`.
    pub fn conjugation(group: &FiniteGroup) -> Self {
        let n = group.size();
        let action = (0..n * n).map(|k| group.conj(k / n, k % n)).collect();
        Self::new(group.clone(), n, action, (0..n).collect(), 0).expect("conjugation triple is in range")
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    #[inline]
    pub fn x_size(&self) -> usize {
        self.x_size
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g * self.x_size + x]
    }

    #[inline]
    pub fn theta(&self, x: usize) -> usize {
        self.theta[x]
    }

    pub fn action_table(&self) -> &[usize] {
        &self.action
    }

    pub fn theta_table(&self) -> &[usize] {
        &self.theta
    }

    /// `x ▷ y := Θ(x)·y`.
    #[inline]
    pub fn rack_op(&self, x: usize, y: usize) -> usize {
        self.act(self.theta(x), y)
    }

    /// The induced pointed rack.
    pub fn rack(&self) -> FiniteRack {
        let n = self.x_size;
        let op = (0..n * n).map(|k| self.rack_op(k / n, k % n)).collect();
        FiniteRack::new(n, op, Some(self.basepoint)).expect("induced rack is in range")
    }

    /// Elements `g` whose defect `gΘ` is constantly the unit.
    pub fn strictness_subgroup(&self) -> Vec<usize> {
        (0..self.group.size()).filter(|&g| g_theta(self, g).iter().all(|&v| v == 0)).collect()
    }

    pub fn is_strict(&self) -> bool {
        self.strictness_subgroup().len() == self.group.size()
    }
}

/// G-set laws, `Θ(e) = e_G`, the pointed rack laws of `x ▷ y := Θ(x)·y`,
/// and the quadratic constraint `Θ(x ▷ y) = Θ(x)Θ(y)Θ(x)⁻¹`. Self-distributivity
/// of the induced product is reported as the derived law `self_distributivity`.
pub fn check_group_rack_triple(t: &GroupRackTriple) -> ValidityReport<f64> {
    let g = &t.group;
    let (gs, n) = (g.size(), t.x_size);
    let mut rep = ValidityReport::new(0.0);
    rep.absorb("group", &g.check());
    for law in ["gset_compatibility", "gset_unit", "theta_basepoint", "pointed", "quadratic_constraint"] {
        rep.declare(law);
    }
    for a in 0..gs {
        for b in 0..gs {
            for x in 0..n {
                let ok = t.act(g.mul(a, b), x) == t.act(a, t.act(b, x));
                rep.record("gset_compatibility", &[a, b, x], fails(ok));
            }
        }
    }
    for x in 0..n {
        rep.record("gset_unit", &[x], fails(t.act(0, x) == x));
    }
    rep.record("theta_basepoint", &[t.basepoint], fails(t.theta(t.basepoint) == 0));
    let e = t.basepoint;
    for x in 0..n {
        rep.record("pointed", &[x], fails(t.rack_op(e, x) == x && t.rack_op(x, e) == e));
    }
    for x in 0..n {
        for y in 0..n {
            let lhs = t.theta(t.rack_op(x, y));
            let rhs = g.conj(t.theta(x), t.theta(y));
            rep.record("quadratic_constraint", &[x, y], fails(lhs == rhs));
        }
    }
    rep.declare_derived("self_distributivity");
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let ok = t.rack_op(x, t.rack_op(y, z)) == t.rack_op(t.rack_op(x, y), t.rack_op(x, z));
                rep.record_derived("self_distributivity", &[x, y, z], fails(ok));
            }
        }
    }
    rep.flag("strict", t.is_strict());
    rep
}

/// `gΘ: x ↦ (gΘ(x)g⁻¹)Θ(g·x)⁻¹`.
pub fn g_theta(t: &GroupRackTriple, g: usize) -> Vec<usize> {
    let grp = &t.group;
    (0..t.x_size).map(|x| grp.mul(grp.conj(g, t.theta(x)), grp.inv(t.theta(t.act(g, x))))).collect()
}

/// `(M, N, μ, η)`, optionally relaxed by a subgroup `N′ ⊇ μ(M)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupCrossedModule {
    pub m_group: FiniteGroup,
    pub n_group: FiniteGroup,
    pub mu: Vec<usize>,
    /// `eta[n·|M| + m] = η(n)(m)`.
    pub eta: Vec<usize>,
    pub n_prime: Option<Vec<usize>>,
}

impl GroupCrossedModule {
    pub fn new(
        m_group: FiniteGroup,
        n_group: FiniteGroup,
        mu: Vec<usize>,
        eta: Vec<usize>,
        n_prime: Option<Vec<usize>>,
    ) -> Result<Self> {
        let (ms, ns) = (m_group.size(), n_group.size());
        if mu.len() != ms || eta.len() != ns * ms {
            return Err(Error::shape("μ must have |M| entries and η must have |N|·|M| entries"));
        }
        check_range("mu", &mu, ns)?;
        check_range("eta", &eta, ms)?;
        if let Some(np) = &n_prime {
            check_range("n_prime", np, ns)?;
        }
        Ok(Self { m_group, n_group, mu, eta, n_prime })
    }

    #[inline]
    pub fn eta(&self, n: usize, m: usize) -> usize {
        self.eta[n * self.m_group.size() + m]
    }

    /// Elements of `N` on which the crossed-module conditions are imposed.
    pub fn equivariant_elements(&self) -> Vec<usize> {
        match &self.n_prime {
            Some(np) => np.clone(),
            None => (0..self.n_group.size()).collect(),
        }
    }

    pub fn check(&self) -> ValidityReport<f64> {
        let (m, n) = (&self.m_group, &self.n_group);
        let mut rep = ValidityReport::new(0.0);
        rep.absorb("m_group", &m.check());
        rep.absorb("n_group", &n.check());
        rep.record("mu_homomorphism", &[], fails(m.is_homomorphism(n, &self.mu)));
        rep.declare("eta_action");
        rep.declare("eta_automorphisms");
        for a in 0..n.size() {
            for b in 0..n.size() {
                for x in 0..m.size() {
                    let ok = self.eta(n.mul(a, b), x) == self.eta(a, self.eta(b, x));
                    rep.record("eta_action", &[a, b, x], fails(ok));
                }
            }
            let row: Vec<usize> = (0..m.size()).map(|x| self.eta(a, x)).collect();
            let bijective = row.iter().collect::<BTreeSet<_>>().len() == m.size();
            rep.record("eta_automorphisms", &[a], fails(bijective && m.is_homomorphism(m, &row)));
        }
        for x in 0..m.size() {
            rep.record("eta_action", &[0, 0, x], fails(self.eta(0, x) == x));
        }
        rep.declare("equivariance");
        for &k in &self.equivariant_elements() {
            for x in 0..m.size() {
                let ok = self.mu[self.eta(k, x)] == n.conj(k, self.mu[x]);
                rep.record("equivariance", &[k, x], fails(ok));
            }
        }
        rep.declare("peiffer");
        for a in 0..m.size() {
            for b in 0..m.size() {
                rep.record("peiffer", &[a, b], fails(self.eta(self.mu[a], b) == m.conj(a, b)));
            }
        }
        if let Some(np) = &self.n_prime {
            rep.record("n_prime_subgroup", &[], fails(n.is_subgroup(np)));
            rep.declare("n_prime_contains_image");
            for x in 0..m.size() {
                rep.record("n_prime_contains_image", &[x], fails(np.contains(&self.mu[x])));
            }
        }
        let full = (0..n.size())
            .all(|k| (0..m.size()).all(|x| self.mu[self.eta(k, x)] == n.conj(k, self.mu[x])));
        rep.flag("fully_equivariant", full);
        rep
    }

    /// First `(n, m)` (lexicographic) where `μ(η(n)(m)) ≠ nμ(m)n⁻¹`, searching all of `N`.
    pub fn find_equivariance_violation(&self) -> Option<(usize, usize)> {
        let (m, n) = (&self.m_group, &self.n_group);
        (0..n.size())
            .flat_map(|k| (0..m.size()).map(move |x| (k, x)))
            .find(|&(k, x)| self.mu[self.eta(k, x)] != n.conj(k, self.mu[x]))
    }
}

/// `A3 ⊂ S3` as the image of `Z3 = {0, 1, 2}`: identity, a 3-cycle `c` and `c²`.
pub fn a3_in_s3() -> Vec<usize> {
    let g = FiniteGroup::symmetric(3);
    let c = (1..6).find(|&a| a != g.mul(a, a) && g.mul(a, g.mul(a, a)) == 0).expect("S3 has a 3-cycle");
    vec![0, c, g.mul(c, c)]
}

impl GroupCrossedModule {
    /// `Z3 ≅ A3 ◁ S3` with `S3` acting by conjugation.
    pub fn s3_a3_normal() -> Self {
        let g = FiniteGroup::symmetric(3);
        let mu = a3_in_s3();
        let pos = |x: usize| mu.iter().position(|&m| m == x).expect("A3 is normal");
        let eta: Vec<usize> = (0..6).flat_map(|n| mu.iter().map(|&m| pos(g.conj(n, m))).collect::<Vec<_>>()).collect();
        Self::new(FiniteGroup::cyclic(3), g, mu, eta, None).expect("static data")
    }

    /// `Z3 → S3` onto `A3` with trivial action, relaxed by `N′ = A3`.
    pub fn s3_a3_relaxed() -> Self {
        let mu = a3_in_s3();
        let eta: Vec<usize> = (0..6).flat_map(|_| 0..3).collect();
        Self::new(FiniteGroup::cyclic(3), FiniteGroup::symmetric(3), mu.clone(), eta, Some(mu)).expect("static data")
    }
}

/// `(N, M, μ)` with `M` an `N`-set via `η` and basepoint the unit of `M`.
pub fn augmented_rack_from_crossed_module(cm: &GroupCrossedModule) -> Result<GroupRackTriple> {
    let rep = cm.check();
    if let Some(fail) = rep.first_failure() {
        return Err(Error::Axiom { law: format!("group crossed module: {}", fail.name), residual: fail.max_residual });
    }
    GroupRackTriple::new(cm.n_group.clone(), cm.m_group.size(), cm.eta.clone(), cm.mu.clone(), 0)
}

/// `Ψ(e) = e′`, `Θ′Ψ = ΦΘ`, `Ψ(g·x) = Φ(g)·Ψ(x)`, and the derived
/// rack-morphism property `Ψ(x ▷ y) = Ψ(x) ▷ Ψ(y)`.
pub fn check_rack_triple_morphism(
    src: &GroupRackTriple,
    dst: &GroupRackTriple,
    phi: &[usize],
    psi: &[usize],
) -> Result<ValidityReport<f64>> {
    if psi.len() != src.x_size {
        return Err(Error::shape(format!("Ψ has {} entries, expected {}", psi.len(), src.x_size)));
    }
    check_range("psi", psi, dst.x_size)?;
    if !src.group.is_homomorphism(&dst.group, phi) {
        return Err(Error::Precondition("Φ is not a group homomorphism".into()));
    }
    let mut rep = ValidityReport::new(0.0);
    rep.record("basepoint", &[src.basepoint], fails(psi[src.basepoint] == dst.basepoint));
    rep.declare("theta_intertwining");
    rep.declare("equivariance");
    rep.declare_derived("rack_morphism");
    for x in 0..src.x_size {
        rep.record("theta_intertwining", &[x], fails(dst.theta(psi[x]) == phi[src.theta(x)]));
        for g in 0..src.group.size() {
            rep.record("equivariance", &[g, x], fails(psi[src.act(g, x)] == dst.act(phi[g], psi[x])));
        }
        for y in 0..src.x_size {
            rep.record_derived("rack_morphism", &[x, y], fails(psi[src.rack_op(x, y)] == dst.rack_op(psi[x], psi[y])));
        }
    }
    Ok(rep)
}

/// `(Φ₂∘Φ₁, Ψ₂∘Ψ₁)`.
pub fn compose_morphisms(first: (&[usize], &[usize]), second: (&[usize], &[usize])) -> (Vec<usize>, Vec<usize>) {
    (first.0.iter().map(|&g| second.0[g]).collect(), first.1.iter().map(|&x| second.1[x]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> FiniteGroup {
        FiniteGroup::symmetric(3)
    }

    /// The sign homomorphism `S3 → Z2` for the lexicographic element order.
    fn sign_s3() -> Vec<usize> {
        permutations(3).iter().map(|p| parity(p)).collect()
    }

    #[test]
    fn catalog_groups_are_groups() {
        for (name, g) in FiniteGroup::catalog() {
            assert!(g.check().passed, "{name}");
        }
        assert_eq!(FiniteGroup::dihedral4().size(), 8);
        assert_eq!(FiniteGroup::alternating(4).size(), 12);
        // Q8 is nonabelian with a single involution
        let q = FiniteGroup::quaternion8();
        assert_eq!((1..8).filter(|&a| q.mul(a, a) == 0).count(), 1);
        assert_ne!(q.mul(1, 2), q.mul(2, 1));
    }

    #[test]
    fn trivial_rack_passes() {
        for size in 1..5 {
            for base in 0..size {
                assert!(check_rack(&FiniteRack::trivial(size, Some(base)).unwrap()).passed);
            }
        }
    }

    #[test]
    fn conjugation_rack_of_s3_passes_all_triples() {
        let r = check_rack(&conjugation_rack(&s3()));
        assert!(r.passed);
        assert_eq!(r.law("self_distributivity").unwrap().checked, 216);
    }

    #[test]
    fn corrupted_entry_is_located() {
        let r = conjugation_rack(&s3());
        // 1 ▷ 2 corrupted from its true value
        let bad = r.with_entry(1, 2, (r.op(1, 2) + 1) % 6).unwrap();
        let rep = check_rack(&bad);
        assert!(!rep.passed);
        let v = rep.violations.iter().find(|v| v.law == "self_distributivity").unwrap();
        assert_eq!(v.indices.len(), 3);
        let (x, y, z) = (v.indices[0], v.indices[1], v.indices[2]);
        assert_ne!(bad.op(x, bad.op(y, z)), bad.op(bad.op(x, y), bad.op(x, z)));
    }

    #[test]
    fn out_of_range_entry_is_structural() {
        assert!(matches!(FiniteRack::new(2, vec![0, 1, 2, 0], None), Err(Error::Shape(_))));
    }

    #[test]
    fn conjugation_rack_examples() {
        assert!(conjugation_rack(&FiniteGroup::cyclic(2)).is_trivial());
        assert!(conjugation_rack(&FiniteGroup::cyclic(4)).is_trivial());
        let orbits = conjugation_rack(&s3()).orbits();
        let sizes: Vec<usize> = orbits.iter().map(Vec::len).collect();
        assert_eq!(orbits.len(), 3);
        assert_eq!(sizes.iter().sum::<usize>(), 6);
        assert!(orbits.contains(&vec![0]));
        let mut sorted = sizes.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![1, 2, 3]);
    }

    #[test]
    fn conjugation_triple_is_strict() {
        let t = GroupRackTriple::conjugation(&s3());
        let r = check_group_rack_triple(&t);
        assert!(r.passed && r.derived_passed());
        assert_eq!(r.get_flag("strict"), Some(true));
        for g in 0..6 {
            assert!(g_theta(&t, g).iter().all(|&v| v == 0));
        }
        assert_eq!(t.rack(), conjugation_rack(&s3()));
    }

    #[test]
    fn singleton_triple_passes() {
        let t = GroupRackTriple::new(s3(), 1, vec![0; 6], vec![0], 0).unwrap();
        assert!(check_group_rack_triple(&t).passed);
    }

    #[test]
    fn constant_nonunit_theta_fails_basepoint() {
        let g = s3();
        let n = g.size();
        let action = (0..n * n).map(|k| g.conj(k / n, k % n)).collect();
        let t = GroupRackTriple::new(g, n, action, vec![3; n], 0).unwrap();
        let r = check_group_rack_triple(&t);
        assert!(!r.law("theta_basepoint").unwrap().passed);
    }

    /// `S3` acting on the cosets `S3/A3`; enumerate every `Θ` and keep valid triples.
    #[test]
    fn exhaustive_search_finds_non_strict_coset_triple() {
        let g = s3();
        let sign = sign_s3();
        let action: Vec<usize> = (0..12).map(|k| (k % 2 + sign[k / 2]) % 2).collect();
        let mut found = None;
        for t0 in 0..6 {
            for t1 in 0..6 {
                let t = GroupRackTriple::new(g.clone(), 2, action.clone(), vec![t0, t1], 0).unwrap();
                if check_group_rack_triple(&t).passed && !t.is_strict() {
                    found.get_or_insert(t);
                }
            }
        }
        let t = found.expect("a valid non-strict triple exists");
        let sub = t.strictness_subgroup();
        assert!(g.is_subgroup(&sub));
        assert!(sub.len() < 6);
        let bad = (0..6).find(|&h| g_theta(&t, h).iter().any(|&v| v != 0)).unwrap();
        assert!(!sub.contains(&bad));
        // Im Θ always lies in the strictness subgroup
        for x in 0..2 {
            assert!(g_theta(&t, t.theta(x)).iter().all(|&v| v == 0));
        }
    }

    #[test]
    fn normal_subgroup_crossed_module() {
        let cm = GroupCrossedModule::s3_a3_normal();
        assert!(cm.check().passed);
        let t = augmented_rack_from_crossed_module(&cm).unwrap();
        let r = check_group_rack_triple(&t);
        assert!(r.passed && r.derived_passed());
        assert!(t.is_strict());
    }

    #[test]
    fn identity_crossed_module_is_conjugation_triple() {
        let g = s3();
        let eta: Vec<usize> = (0..36).map(|k| g.conj(k / 6, k % 6)).collect();
        let cm = GroupCrossedModule::new(g.clone(), g.clone(), (0..6).collect(), eta, None).unwrap();
        assert_eq!(augmented_rack_from_crossed_module(&cm).unwrap(), GroupRackTriple::conjugation(&g));
    }

    #[test]
    fn relaxed_s3_a3_crossed_module() {
        let mu = a3_in_s3();
        let cm = GroupCrossedModule::s3_a3_relaxed();
        let rep = cm.check();
        assert!(rep.passed);
        assert_eq!(rep.get_flag("fully_equivariant"), Some(false));
        let (n, _) = cm.find_equivariance_violation().unwrap();
        assert!(!mu.contains(&n));
        let t = augmented_rack_from_crossed_module(&cm).unwrap();
        assert!(check_group_rack_triple(&t).passed);
        assert!(!t.is_strict());
        // without N′ the same data is rejected
        let plain = GroupCrossedModule { n_prime: None, ..cm };
        assert!(!plain.check().passed);
    }

    #[test]
    fn morphism_examples() {
        let g = s3();
        let t = GroupRackTriple::conjugation(&g);
        let id: Vec<usize> = (0..6).collect();
        assert!(check_rack_triple_morphism(&t, &t, &id, &id).unwrap().passed);

        let z2 = GroupRackTriple::conjugation(&FiniteGroup::cyclic(2));
        let sign = sign_s3();
        let r = check_rack_triple_morphism(&t, &z2, &sign, &sign).unwrap();
        assert!(r.passed && r.derived_passed());

        let mut bad = id.clone();
        bad.swap(0, 1);
        let r = check_rack_triple_morphism(&t, &t, &id, &bad).unwrap();
        assert!(!r.law("basepoint").unwrap().passed);

        assert!(matches!(check_rack_triple_morphism(&t, &z2, &[0, 1, 0, 1, 0, 1], &sign), Err(Error::Precondition(_))));
    }

    #[test]
    fn composed_morphisms_stay_valid() {
        let g = s3();
        let t = GroupRackTriple::conjugation(&g);
        let z2 = GroupRackTriple::conjugation(&FiniteGroup::cyclic(2));
        // inner automorphism by element 1, then sign
        let inner: Vec<usize> = (0..6).map(|x| g.conj(1, x)).collect();
        let sign = sign_s3();
        assert!(check_rack_triple_morphism(&t, &t, &inner, &inner).unwrap().passed);
        let (phi, psi) = compose_morphisms((&inner, &inner), (&sign, &sign));
        let r = check_rack_triple_morphism(&t, &z2, &phi, &psi).unwrap();
        assert!(r.passed && r.derived_passed());
    }
}

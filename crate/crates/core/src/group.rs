//! Finite groups stored as dense multiplication tables.
//!
//! Every group in the crate is a [`FiniteGroup`]: elements are the dense indices
//! `0..order`, multiplication is a table lookup. Permutation input and the builtin
//! families are materialized to a table on construction; element order for those
//! is the lexicographic order of the permutations, so the identity is index 0.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::SubgroupLattice;

/// Element index inside a [`FiniteGroup`].
pub type Elem = u32;

/// Default soft cap on group orders.
pub const DEFAULT_MAX_ORDER: usize = 512;

/// Exhaustive associativity checks run up to this order; larger groups are sampled.
const EXHAUSTIVE_ASSOC_LIMIT: usize = 64;
const SAMPLED_ASSOC_TRIPLES: usize = 10_000;

pub struct FiniteGroup {
    label: String,
    order: usize,
    table: Vec<Elem>,
    identity: Elem,
    inverse: Vec<Elem>,
    elem_order: Vec<u32>,
    perms: Option<Vec<Vec<u32>>>,
    lattice: OnceLock<SubgroupLattice>,
    standalone: Mutex<HashMap<Subgroup, Arc<FiniteGroup>>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup").field("label", &self.label).field("order", &self.order).finish()
    }
}

/// Structural equality: same table and identity. Labels are display-only.
impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other)
            || (self.order == other.order && self.identity == other.identity && self.table == other.table)
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Builds a group from an `n x n` table of element indices.
    pub fn from_cayley(label: impl Into<String>, rows: &[Vec<u32>], max_order: usize) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty multiplication table".into()));
        }
        if n > max_order {
            return Err(Error::OrderCapExceeded { order: n, cap: max_order });
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("row {i} has length {} (expected {n})", row.len())));
            }
            for &v in row {
                if v as usize >= n {
                    return Err(Error::InvalidGroup(format!("entry {v} out of range in row {i}")));
                }
                table.push(v);
            }
        }
        Self::from_table(label.into(), n, table, None)
    }

    /// Closes a set of permutations (image arrays on `0..degree`) under composition.
    pub fn from_permutations(
        label: impl Into<String>,
        degree: usize,
        generators: &[Vec<u32>],
        max_order: usize,
    ) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if g.len() != degree {
                return Err(Error::InvalidGroup(format!(
                    "generator {i} has {} images but degree is {degree}",
                    g.len()
                )));
            }
            let mut seen = vec![false; degree];
            for &x in g {
                if x as usize >= degree || seen[x as usize] {
                    return Err(Error::InvalidGroup(format!("generator {i} is not a permutation of 0..{degree}")));
                }
                seen[x as usize] = true;
            }
        }
        let identity: Vec<u32> = (0..degree as u32).collect();
        let mut seen: HashMap<Vec<u32>, ()> = HashMap::new();
        let mut queue = VecDeque::new();
        seen.insert(identity.clone(), ());
        queue.push_back(identity);
        while let Some(x) = queue.pop_front() {
            for g in generators {
                let y = compose_perm(g, &x);
                if !seen.contains_key(&y) {
                    if seen.len() >= max_order {
                        return Err(Error::OrderCapExceeded { order: seen.len() + 1, cap: max_order });
                    }
                    seen.insert(y.clone(), ());
                    queue.push_back(y);
                }
            }
        }
        let mut perms: Vec<Vec<u32>> = seen.into_keys().collect();
        perms.sort();
        let index: HashMap<&[u32], u32> = perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i as u32)).collect();
        let n = perms.len();
        let mut table = Vec::with_capacity(n * n);
        for a in &perms {
            for b in &perms {
                table.push(index[compose_perm(a, b).as_slice()]);
            }
        }
        Self::from_table(label.into(), n, table, Some(perms))
    }

    fn from_table(label: String, n: usize, table: Vec<Elem>, perms: Option<Vec<Vec<u32>>>) -> Result<Self> {
        let at = |a: usize, b: usize| table[a * n + b] as usize;
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| Error::InvalidGroup("no two-sided identity".into()))?;
        let inverse = (0..n)
            .map(|x| {
                (0..n)
                    .find(|&y| at(y, x) == identity && at(x, y) == identity)
                    .map(|y| y as Elem)
                    .ok_or_else(|| Error::InvalidGroup(format!("element {x} has no inverse")))
            })
            .collect::<Result<Vec<Elem>>>()?;
        let check = |a: usize, b: usize, c: usize| -> Result<()> {
            if at(at(a, b), c) != at(a, at(b, c)) {
                return Err(Error::InvalidGroup(format!("multiplication is not associative at ({a}, {b}, {c})")));
            }
            Ok(())
        };
        if n <= EXHAUSTIVE_ASSOC_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5ee_d0fa_550c);
            for _ in 0..SAMPLED_ASSOC_TRIPLES {
                check(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))?;
            }
        }
        let elem_order: Vec<u32> = (0..n)
            .map(|x| {
                let (mut y, mut k) = (x, 1u32);
                while y != identity {
                    y = at(y, x);
                    k += 1;
                }
                k
            })
            .collect();
        Ok(FiniteGroup {
            label,
            order: n,
            table,
            identity: identity as Elem,
            inverse,
            elem_order,
            perms,
            lattice: OnceLock::new(),
            standalone: Mutex::new(HashMap::new()),
        })
    }

    /// Parses a builtin name such as `"symmetric 4"`, `"D8"` or `"S4 x C3"`.
    pub fn builtin(name: &str, max_order: usize) -> Result<Self> {
        let factors: Vec<&str> =
            name.split('×').flat_map(|s| s.split(" x ")).map(str::trim).filter(|s| !s.is_empty()).collect();
        if factors.is_empty() {
            return Err(Error::UnknownBuiltin(name.to_string()));
        }
        let mut degree = 0usize;
        let mut gens: Vec<Vec<u32>> = Vec::new();
        let mut labels = Vec::new();
        for f in factors {
            let (d, g, l) = builtin_factor(f).ok_or_else(|| Error::UnknownBuiltin(name.to_string()))?;
            // shift the existing generators onto a larger point set, then append
            for gen in gens.iter_mut() {
                gen.extend((degree as u32)..(degree + d) as u32);
            }
            for h in g {
                let mut full: Vec<u32> = (0..degree as u32).collect();
                full.extend(h.iter().map(|&x| x + degree as u32));
                gens.push(full);
            }
            degree += d;
            labels.push(l);
        }
        Self::from_permutations(labels.join("x"), degree, &gens, max_order)
    }

    /// Direct product of two groups; element `(a, b)` has index `a * |rhs| + b`.
    pub fn direct_product(lhs: &FiniteGroup, rhs: &FiniteGroup) -> Result<Self> {
        let (n, m) = (lhs.order, rhs.order);
        let mut table = Vec::with_capacity(n * m * n * m);
        for a1 in 0..n {
            for b1 in 0..m {
                for a2 in 0..n {
                    for b2 in 0..m {
                        let a = lhs.mul(a1 as Elem, a2 as Elem);
                        let b = rhs.mul(b1 as Elem, b2 as Elem);
                        table.push(a * m as Elem + b);
                    }
                }
            }
        }
        Self::from_table(format!("{}x{}", lhs.label, rhs.label), n * m, table, None)
    }

    /// The multiplication table as rows.
    pub fn cayley_rows(&self) -> Vec<Vec<u32>> {
        self.table.chunks(self.order).map(<[u32]>::to_vec).collect()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a as usize]
    }

    /// `g x g^-1`.
    #[inline]
    pub fn conj(&self, g: Elem, x: Elem) -> Elem {
        self.mul(self.mul(g, x), self.inverse[g as usize])
    }

    pub fn elem_order(&self, a: Elem) -> u32 {
        self.elem_order[a as usize]
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order as Elem
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The permutation realizing `x`, when the group came from permutations.
    pub fn permutation(&self, x: Elem) -> Option<&[u32]> {
        self.perms.as_ref().map(|p| p[x as usize].as_slice())
    }

    /// Looks an element up by its permutation.
    pub fn find_permutation(&self, perm: &[u32]) -> Option<Elem> {
        let perms = self.perms.as_ref()?;
        perms.binary_search_by(|p| p.as_slice().cmp(perm)).ok().map(|i| i as Elem)
    }

    pub fn is_p_group(&self, p: u64) -> bool {
        p_part(self.order as u64, p) == self.order as u64
    }

    /// Subgroup generated by `gens`.
    pub fn generate(&self, gens: &[Elem]) -> Subgroup {
        let mut member = vec![false; self.order];
        member[self.identity as usize] = true;
        let mut elems = vec![self.identity];
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !member[y as usize] {
                    member[y as usize] = true;
                    elems.push(y);
                    frontier.push(y);
                }
            }
        }
        Subgroup::from_unsorted(elems)
    }

    /// Subgroup generated by `base` and `extra`.
    pub fn join(&self, base: &Subgroup, extra: &[Elem]) -> Subgroup {
        let mut gens: Vec<Elem> = base.elements().to_vec();
        gens.extend_from_slice(extra);
        self.generate(&gens)
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_sorted(self.elements().collect())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_sorted(vec![self.identity])
    }

    /// Checks closure, identity and inverses for an arbitrary element set.
    pub fn check_subgroup(&self, elems: &[Elem]) -> Result<Subgroup> {
        let sub = Subgroup::from_unsorted(elems.to_vec());
        if sub.elements().iter().any(|&x| x as usize >= self.order) {
            return Err(Error::NotASubgroup("element index out of range".into()));
        }
        if !sub.contains(self.identity) {
            return Err(Error::NotASubgroup("missing identity".into()));
        }
        for &a in sub.elements() {
            if !sub.contains(self.inv(a)) {
                return Err(Error::NotASubgroup(format!("not closed under inverse at {a}")));
            }
            for &b in sub.elements() {
                if !sub.contains(self.mul(a, b)) {
                    return Err(Error::NotASubgroup(format!("not closed under multiplication at ({a}, {b})")));
                }
            }
        }
        Ok(sub)
    }

    /// `g K g^-1`.
    pub fn conjugate_subgroup(&self, g: Elem, k: &Subgroup) -> Subgroup {
        Subgroup::from_unsorted(k.elements().iter().map(|&x| self.conj(g, x)).collect())
    }

    pub fn intersect(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        Subgroup::from_sorted(a.elements().iter().copied().filter(|&x| b.contains(x)).collect())
    }

    pub fn normalizer(&self, k: &Subgroup) -> Subgroup {
        Subgroup::from_sorted(self.elements().filter(|&g| self.conjugate_subgroup(g, k) == *k).collect())
    }

    pub fn centralizer(&self, k: &Subgroup) -> Subgroup {
        Subgroup::from_sorted(
            self.elements().filter(|&g| k.elements().iter().all(|&x| self.mul(g, x) == self.mul(x, g))).collect(),
        )
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer(&self.whole())
    }

    pub fn is_normal(&self, k: &Subgroup) -> bool {
        self.elements().all(|g| self.conjugate_subgroup(g, k) == *k)
    }

    /// The product set `A B` as a sorted element list.
    pub fn product_set(&self, a: &Subgroup, b: &Subgroup) -> Vec<Elem> {
        let mut member = vec![false; self.order];
        for &x in a.elements() {
            for &y in b.elements() {
                member[self.mul(x, y) as usize] = true;
            }
        }
        (0..self.order as Elem).filter(|&x| member[x as usize]).collect()
    }

    /// The subgroup `sub` as a group in its own right (element `i` is the `i`-th
    /// smallest element of `sub`), built once and shared.
    pub(crate) fn standalone(&self, sub: &Subgroup, label: String) -> Result<Arc<FiniteGroup>> {
        if let Some(g) = self.standalone.lock().unwrap().get(sub) {
            return Ok(g.clone());
        }
        self.check_subgroup(sub.elements())?;
        let elems = sub.elements();
        let rows: Vec<Vec<u32>> = elems
            .iter()
            .map(|&a| elems.iter().map(|&b| sub.position(self.mul(a, b)).unwrap() as u32).collect())
            .collect();
        let group = Arc::new(FiniteGroup::from_cayley(label, &rows, usize::MAX)?);
        Ok(self.standalone.lock().unwrap().entry(sub.clone()).or_insert(group).clone())
    }

    /// Lazily computed subgroup lattice; safe under concurrent first access.
    pub fn lattice(&self) -> &SubgroupLattice {
        self.lattice.get_or_init(|| SubgroupLattice::compute(self))
    }
}

/// Sorted set of element indices of some ambient group, closed under the group law.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Subgroup(Vec<Elem>);

impl Subgroup {
    pub fn from_sorted(elems: Vec<Elem>) -> Self {
        debug_assert!(elems.windows(2).all(|w| w[0] < w[1]));
        Subgroup(elems)
    }

    pub fn from_unsorted(mut elems: Vec<Elem>) -> Self {
        elems.sort_unstable();
        elems.dedup();
        Subgroup(elems)
    }

    pub fn elements(&self) -> &[Elem] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    /// Position of `x` in the sorted element list.
    pub fn position(&self, x: Elem) -> Option<usize> {
        self.0.binary_search(&x).ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.0.iter().all(|&x| other.contains(x))
    }
}

/// Exact `p`-part of `n`.
pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut out = 1;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        out *= p;
    }
    out
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn compose_perm(a: &[u32], b: &[u32]) -> Vec<u32> {
    // (a b)(i) = a(b(i))
    b.iter().map(|&i| a[i as usize]).collect()
}

fn cycle(degree: usize, points: &[u32]) -> Vec<u32> {
    let mut p: Vec<u32> = (0..degree as u32).collect();
    for (i, &a) in points.iter().enumerate() {
        p[a as usize] = points[(i + 1) % points.len()];
    }
    p
}

fn product_of(degree: usize, cycles: &[&[u32]]) -> Vec<u32> {
    cycles.iter().fold((0..degree as u32).collect(), |acc, c| compose_perm(&acc, &cycle(degree, c)))
}

/// `(degree, generators, short label)` for one builtin factor.
fn builtin_factor(name: &str) -> Option<(usize, Vec<Vec<u32>>, String)> {
    let lower = name.to_ascii_lowercase();
    let (family, n) = split_family(&lower)?;
    match family {
        "cyclic" | "c" => {
            let n = n?;
            if n == 0 {
                return None;
            }
            Some((n, vec![cycle(n, &(0..n as u32).collect::<Vec<_>>())], format!("C{n}")))
        }
        "trivial" => Some((1, vec![], "C1".into())),
        "klein4" | "v4" | "klein" => {
            if n.is_some_and(|k| k != 4) {
                return None;
            }
            Some((4, vec![product_of(4, &[&[0, 1], &[2, 3]]), product_of(4, &[&[0, 2], &[1, 3]])], "V4".into()))
        }
        "dihedral" | "d" => {
            let order = n?;
            if order < 4 || order % 2 != 0 {
                return None;
            }
            if order == 4 {
                return builtin_factor("klein4").map(|(d, g, _)| (d, g, "D4".into()));
            }
            let m = order / 2;
            let rot = cycle(m, &(0..m as u32).collect::<Vec<_>>());
            let refl: Vec<u32> = (0..m).map(|i| ((m - i) % m) as u32).collect();
            Some((m, vec![rot, refl], format!("D{order}")))
        }
        "quaternion" | "q" => {
            if n != Some(8) {
                return None;
            }
            let i = product_of(8, &[&[0, 1, 3, 6], &[2, 5, 7, 4]]);
            let j = product_of(8, &[&[0, 2, 3, 7], &[1, 4, 6, 5]]);
            Some((8, vec![i, j], "Q8".into()))
        }
        "symmetric" | "s" => {
            let n = n?;
            if n == 0 {
                return None;
            }
            if n == 1 {
                return Some((1, vec![], "S1".into()));
            }
            let full = cycle(n, &(0..n as u32).collect::<Vec<_>>());
            Some((n, vec![full, cycle(n, &[0, 1])], format!("S{n}")))
        }
        "alternating" | "a" => {
            let n = n?;
            if n == 0 {
                return None;
            }
            let gens = (2..n as u32).map(|k| cycle(n, &[0, 1, k])).collect();
            Some((n, gens, format!("A{n}")))
        }
        _ => None,
    }
}

fn split_family(s: &str) -> Option<(&str, Option<usize>)> {
    let s = s.trim();
    if let Some((fam, num)) = s.split_once(char::is_whitespace) {
        return Some((fam.trim(), Some(num.trim().parse().ok()?)));
    }
    if matches!(s, "klein4" | "v4" | "trivial" | "klein") {
        return Some((s, None));
    }
    let split = s.find(|c: char| c.is_ascii_digit())?;
    let (fam, num) = s.split_at(split);
    Some((fam, Some(num.parse().ok()?)))
}

/// JSON group description: exactly one of `cayley`, `permutations` or `builtin`.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cayley: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub permutations: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl GroupSpec {
    pub fn builtin(name: &str) -> Self {
        GroupSpec { builtin: Some(name.to_string()), ..Default::default() }
    }

    pub fn build(&self, max_order: usize) -> Result<Arc<FiniteGroup>> {
        let given = [self.cayley.is_some(), self.permutations.is_some(), self.builtin.is_some()];
        if given.iter().filter(|&&b| b).count() != 1 {
            return Err(Error::InvalidGroup(
                "group description needs exactly one of \"cayley\", \"permutations\", \"builtin\"".into(),
            ));
        }
        let group = if let Some(rows) = &self.cayley {
            FiniteGroup::from_cayley(self.label.clone().unwrap_or_else(|| "G".into()), rows, max_order)?
        } else if let Some(gens) = &self.permutations {
            let degree = self
                .degree
                .or_else(|| gens.first().map(Vec::len))
                .ok_or_else(|| Error::InvalidGroup("permutation description without degree".into()))?;
            FiniteGroup::from_permutations(self.label.clone().unwrap_or_else(|| "G".into()), degree, gens, max_order)?
        } else {
            let g = FiniteGroup::builtin(self.builtin.as_deref().unwrap_or_default(), max_order)?;
            match &self.label {
                Some(l) => g.with_label(l.clone()),
                None => g,
            }
        };
        Ok(Arc::new(group))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn klein_four_is_elementary_abelian() {
        let v4 = FiniteGroup::builtin("klein4", DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(v4.order(), 4);
        for x in v4.elements() {
            assert_eq!(v4.mul(x, x), v4.identity());
        }
    }

    #[test]
    fn builtin_orders() {
        for (name, n) in [
            ("symmetric 4", 24),
            ("S3", 6),
            ("A4", 12),
            ("alternating 5", 60),
            ("dihedral 8", 8),
            ("D12", 12),
            ("Q8", 8),
            ("C6", 6),
            ("trivial", 1),
            ("S4 x C3", 72),
            ("C2 × C2 × C2", 8),
        ] {
            assert_eq!(FiniteGroup::builtin(name, DEFAULT_MAX_ORDER).unwrap().order(), n, "{name}");
        }
    }

    #[test]
    fn quaternion_has_unique_involution() {
        let q8 = FiniteGroup::builtin("quaternion 8", DEFAULT_MAX_ORDER).unwrap();
        let involutions = q8.elements().filter(|&x| q8.elem_order(x) == 2).count();
        assert_eq!(involutions, 1);
        assert!(!q8.is_abelian());
    }

    #[test]
    fn permutation_generators_close_to_dihedral_eight() {
        // (1 2 3 4) and (1 3), zero-based
        let g = FiniteGroup::from_permutations("D8", 4, &[vec![1, 2, 3, 0], vec![2, 1, 0, 3]], 512).unwrap();
        assert_eq!(g.order(), 8);
        assert!(!g.is_abelian());
        assert_eq!(g.elements().filter(|&x| g.elem_order(x) == 2).count(), 5);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(FiniteGroup::from_permutations("x", 3, &[vec![0, 0, 1]], 512), Err(Error::InvalidGroup(_))));
        let non_assoc = vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 0]];
        assert!(FiniteGroup::from_cayley("x", &non_assoc, 512).is_err());
        assert!(matches!(FiniteGroup::builtin("symmetric 6", 512), Err(Error::OrderCapExceeded { .. })));
        assert!(matches!(FiniteGroup::builtin("frobnicate 3", 512), Err(Error::UnknownBuiltin(_))));
    }

    #[test]
    fn cayley_round_trip_of_cyclic_three() {
        let rows = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
        let g = FiniteGroup::from_cayley("C3", &rows, 512).unwrap();
        assert_eq!(g.identity(), 0);
        assert_eq!(g.inv(1), 2);
        assert_eq!(g.elem_order(1), 3);
    }

    #[test]
    fn group_spec_requires_exactly_one_source() {
        let spec: GroupSpec = serde_json::from_str(r#"{"builtin": "S3", "cayley": [[0]]}"#).unwrap();
        assert!(spec.build(512).is_err());
        let spec: GroupSpec = serde_json::from_str(r#"{"permutations": [[1,0,2],[0,2,1]], "degree": 3}"#).unwrap();
        assert_eq!(spec.build(512).unwrap().order(), 6);
    }

    #[test]
    fn direct_product_matches_builtin_order() {
        let s3 = FiniteGroup::builtin("S3", 512).unwrap();
        let c2 = FiniteGroup::builtin("C2", 512).unwrap();
        let p = FiniteGroup::direct_product(&s3, &c2).unwrap();
        assert_eq!(p.order(), 12);
        assert_eq!(p.center().order(), 2);
    }
}

//! Subgroup lattices, conjugacy classes, double cosets and the group-level
//! substitutes for `O^p`, `O^{p'}` and the hyperfocal subgroup.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::{p_part, Elem, FiniteGroup, Subgroup};

/// All subgroups of a group, grouped into conjugacy classes.
///
/// Subgroups are listed by increasing order; each class is contiguous and led by its
/// lexicographically least member, and classes of equal order are sorted by that leader.
#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    subgroups: Vec<Subgroup>,
    index: HashMap<Subgroup, usize>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    /// `g` with `g K g^-1` equal to the class leader.
    to_leader: Vec<Elem>,
    /// Normalizer of each class leader.
    leader_normalizers: Vec<Subgroup>,
}

impl SubgroupLattice {
    pub(crate) fn compute(g: &FiniteGroup) -> Self {
        let n = g.order();
        let whole = g.whole();
        let mut found: HashMap<Subgroup, ()> = HashMap::new();
        let mut queue: Vec<Subgroup> = Vec::new();
        let push = |s: Subgroup, found: &mut HashMap<Subgroup, ()>, queue: &mut Vec<Subgroup>| {
            if !found.contains_key(&s) {
                found.insert(s.clone(), ());
                queue.push(s);
            }
        };
        push(g.trivial_subgroup(), &mut found, &mut queue);
        for x in g.elements() {
            push(g.generate(&[x]), &mut found, &mut queue);
        }
        let mut cursor = 0;
        while cursor < queue.len() {
            let h = queue[cursor].clone();
            cursor += 1;
            if h.order() == n {
                continue;
            }
            // any proper overgroup has index at most |G:H|/2, so |H| > n/2 forces G
            if 2 * h.order() > n {
                push(whole.clone(), &mut found, &mut queue);
                continue;
            }
            // <H, g> depends only on the coset Hg
            let mut covered = vec![false; n];
            for x in g.elements() {
                if covered[x as usize] {
                    continue;
                }
                for &y in h.elements() {
                    covered[g.mul(y, x) as usize] = true;
                }
                if h.contains(x) {
                    continue;
                }
                let joined = g.join(&h, &[x]);
                push(joined, &mut found, &mut queue);
            }
        }
        let mut subgroups: Vec<Subgroup> = found.into_keys().collect();
        subgroups.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp(b)));
        let pos: HashMap<Subgroup, usize> = subgroups.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();

        // conjugacy classes; iterating in sorted order makes the first member the leader
        let mut class_raw: Vec<Option<usize>> = vec![None; subgroups.len()];
        let mut to_leader_raw = vec![g.identity(); subgroups.len()];
        let mut raw_classes: Vec<Vec<usize>> = Vec::new();
        for i in 0..subgroups.len() {
            if class_raw[i].is_some() {
                continue;
            }
            let c = raw_classes.len();
            let mut members = vec![i];
            class_raw[i] = Some(c);
            for x in g.elements() {
                let conj = g.conjugate_subgroup(x, &subgroups[i]);
                let j = pos[&conj];
                if class_raw[j].is_none() {
                    class_raw[j] = Some(c);
                    // x K x^-1 = K_j, so x^-1 K_j x = K
                    to_leader_raw[j] = g.inv(x);
                    members.push(j);
                }
            }
            members.sort_unstable();
            raw_classes.push(members);
        }
        // reorder: classes by (order, leader), members contiguous
        let mut order_of_classes: Vec<usize> = (0..raw_classes.len()).collect();
        order_of_classes.sort_by_key(|&c| (subgroups[raw_classes[c][0]].order(), raw_classes[c][0]));
        let mut new_subgroups = Vec::with_capacity(subgroups.len());
        let mut class_of = Vec::with_capacity(subgroups.len());
        let mut to_leader = Vec::with_capacity(subgroups.len());
        let mut classes = Vec::with_capacity(raw_classes.len());
        let mut leader_normalizers = Vec::with_capacity(raw_classes.len());
        for (new_c, &c) in order_of_classes.iter().enumerate() {
            let mut members = Vec::new();
            for &i in &raw_classes[c] {
                members.push(new_subgroups.len());
                new_subgroups.push(subgroups[i].clone());
                class_of.push(new_c);
                to_leader.push(to_leader_raw[i]);
            }
            leader_normalizers.push(g.normalizer(&subgroups[raw_classes[c][0]]));
            classes.push(members);
        }
        let index = new_subgroups.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        SubgroupLattice { subgroups: new_subgroups, index, class_of, classes, to_leader, leader_normalizers }
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Member indices of each class; the first entry is the class leader.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn id_of(&self, s: &Subgroup) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn get(&self, id: usize) -> &Subgroup {
        &self.subgroups[id]
    }

    pub fn class_of(&self, id: usize) -> usize {
        self.class_of[id]
    }

    pub fn leader(&self, class: usize) -> &Subgroup {
        &self.subgroups[self.classes[class][0]]
    }

    pub fn leader_normalizer(&self, class: usize) -> &Subgroup {
        &self.leader_normalizers[class]
    }

    /// An element `g` with `g K g^-1` equal to the leader of the class of `K`.
    pub fn conjugator_to_leader(&self, id: usize) -> Elem {
        self.to_leader[id]
    }

    /// Class leaders, one per conjugacy class.
    pub fn leaders(&self) -> impl Iterator<Item = &Subgroup> {
        self.classes.iter().map(move |c| &self.subgroups[c[0]])
    }

    /// Ids of all subgroups contained in `s`.
    pub fn subgroups_of(&self, s: &Subgroup) -> Vec<usize> {
        (0..self.subgroups.len()).filter(|&i| self.subgroups[i].is_subset_of(s)).collect()
    }
}

/// One double coset `A x B` with its least element as representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DoubleCoset {
    pub representative: Elem,
    pub size: usize,
}

/// Double cosets `A \ G / B`, ordered by representative.
pub fn double_cosets(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> Result<Vec<DoubleCoset>> {
    for s in [a, b] {
        g.check_subgroup(s.elements())?;
    }
    Ok(double_cosets_unchecked(g, a, b))
}

pub(crate) fn double_cosets_unchecked(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> Vec<DoubleCoset> {
    let mut assigned = vec![false; g.order()];
    let mut out = Vec::new();
    for x in g.elements() {
        if assigned[x as usize] {
            continue;
        }
        let mut size = 0;
        for &u in a.elements() {
            let ux = g.mul(u, x);
            for &v in b.elements() {
                let y = g.mul(ux, v) as usize;
                if !assigned[y] {
                    assigned[y] = true;
                    size += 1;
                }
            }
        }
        out.push(DoubleCoset { representative: x, size });
    }
    out
}

/// A Sylow subgroup together with the group-level substitutes used for
/// `O^p`, `O^{p'}` and the hyperfocal subgroup.
#[derive(Clone, Debug)]
pub struct CoreSubgroups {
    pub sylow: Subgroup,
    /// Subgroup generated by the elements of order prime to `p`.
    pub o_p: Subgroup,
    /// Subgroup generated by the `p`-elements.
    pub o_p_prime: Subgroup,
    /// `sylow ∩ O^p(G)`.
    pub hyperfocal: Subgroup,
}

pub fn core_subgroups(g: &FiniteGroup, p: u64) -> CoreSubgroups {
    let sylow = sylow_subgroup(g, p);
    let p_prime_elems: Vec<Elem> = g.elements().filter(|&x| !(g.elem_order(x) as u64).is_multiple_of(p)).collect();
    let p_elems: Vec<Elem> =
        g.elements().filter(|&x| p_part(g.elem_order(x) as u64, p) == g.elem_order(x) as u64).collect();
    let o_p = g.generate(&p_prime_elems);
    let o_p_prime = g.generate(&p_elems);
    let hyperfocal = g.intersect(&sylow, &o_p);
    CoreSubgroups { sylow, o_p, o_p_prime, hyperfocal }
}

/// Deterministic Sylow `p`-subgroup: grow `P` by the least element of `N_G(P)`
/// whose image in `N_G(P)/P` has order `p`.
pub fn sylow_subgroup(g: &FiniteGroup, p: u64) -> Subgroup {
    let target = p_part(g.order() as u64, p) as usize;
    let mut current = g.trivial_subgroup();
    while current.order() < target {
        let norm = g.normalizer(&current);
        let next = norm
            .elements()
            .iter()
            .copied()
            .find(|&x| !current.contains(x) && current.contains(power(g, x, p)))
            .expect("a non-Sylow p-subgroup has a p-element in its normalizer quotient");
        current = g.join(&current, &[next]);
    }
    current
}

pub fn is_sylow(g: &FiniteGroup, s: &Subgroup, p: u64) -> bool {
    s.order() as u64 == p_part(g.order() as u64, p) && p_part(s.order() as u64, p) == s.order() as u64
}

pub(crate) fn power(g: &FiniteGroup, x: Elem, k: u64) -> Elem {
    (0..k).fold(g.identity(), |acc, _| g.mul(acc, x))
}

/// Ensures `s` is a subgroup of `g`, wrapping the error with a name.
pub fn require_subgroup(g: &FiniteGroup, s: &Subgroup, what: &str) -> Result<()> {
    g.check_subgroup(s.elements()).map(|_| ()).map_err(|e| Error::NotASubgroup(format!("{what}: {e}")))
}

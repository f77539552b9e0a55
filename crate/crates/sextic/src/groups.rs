//! The sixteen transitive subgroups of S6 up to conjugacy.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{CycleType, Partition};

/// Permutation of {0..5}; `img[i]` is the image of point i. Displayed 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation(pub [u8; 6]);

impl Permutation {
    pub const IDENTITY: Permutation = Permutation([0, 1, 2, 3, 4, 5]);

    pub fn from_images(img: [u8; 6]) -> Result<Self> {
        let mut seen = [false; 6];
        for &x in &img {
            if x >= 6 || seen[x as usize] {
                return Err(Error::Parse(format!("not a permutation: {:?}", img)));
            }
            seen[x as usize] = true;
        }
        Ok(Permutation(img))
    }

    /// Parse cycle notation on points 1..6, e.g. "(1,2,3)(4,5)" or "(1 2 3)".
    pub fn parse(s: &str) -> Result<Self> {
        let mut img = [0u8, 1, 2, 3, 4, 5];
        let s = s.trim();
        if s.is_empty() || s == "()" {
            return Ok(Self::IDENTITY);
        }
        for cyc in s.split(')') {
            let cyc = cyc.trim().trim_start_matches('(');
            if cyc.trim().is_empty() {
                continue;
            }
            let pts: Vec<u8> = cyc
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<u8>().map_err(|_| Error::Parse(format!("bad point {:?}", t))))
                .collect::<Result<_>>()?;
            if pts.iter().any(|&p| p == 0 || p > 6) {
                return Err(Error::Parse(format!("point out of range in {:?}", s)));
            }
            for i in 0..pts.len() {
                img[(pts[i] - 1) as usize] = pts[(i + 1) % pts.len()] - 1;
            }
        }
        Self::from_images(img)
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    /// (self * other)(i) = self(other(i)).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        let mut r = [0u8; 6];
        for i in 0..6 {
            r[i] = self.0[other.0[i] as usize];
        }
        Permutation(r)
    }

    pub fn inverse(&self) -> Permutation {
        let mut r = [0u8; 6];
        for i in 0..6 {
            r[self.0[i] as usize] = i as u8;
        }
        Permutation(r)
    }

    /// tau * self * tau^-1
    pub fn conjugate_by(&self, tau: &Permutation) -> Permutation {
        tau.compose(self).compose(&tau.inverse())
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = [false; 6];
        let mut out = Vec::new();
        for s in 0..6 {
            if seen[s] {
                continue;
            }
            let mut c = vec![];
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                c.push(x);
                x = self.0[x] as usize;
            }
            out.push(c);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        Partition::from_usizes(self.cycles().iter().map(|c| c.len()))
    }

    pub fn is_even(&self) -> bool {
        self.cycle_type().is_even()
    }

    /// Index in 0..720 (lexicographic rank of the image array).
    pub fn rank(&self) -> usize {
        let mut r = 0;
        let mut used = [false; 6];
        for i in 0..6 {
            let x = self.0[i] as usize;
            let smaller = (0..x).filter(|&y| !used[y]).count();
            r = r * (6 - i) + smaller;
            used[x] = true;
        }
        r
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cs.is_empty() {
            return write!(f, "()");
        }
        for c in cs {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

pub fn cycle_type(p: &Permutation) -> CycleType {
    p.cycle_type()
}

/// All 720 permutations in rank order.
pub fn all_permutations() -> &'static [Permutation] {
    static ALL: Lazy<Vec<Permutation>> = Lazy::new(|| {
        let mut v: Vec<Permutation> = itertools::Itertools::permutations(0u8..6, 6)
            .map(|p| Permutation([p[0], p[1], p[2], p[3], p[4], p[5]]))
            .collect();
        v.sort();
        v
    });
    &ALL
}

/// Closure of the generators under composition.
pub fn expand(generators: &[Permutation]) -> Vec<Permutation> {
    let mut set: HashSet<Permutation> = HashSet::new();
    set.insert(Permutation::IDENTITY);
    let mut frontier = vec![Permutation::IDENTITY];
    while let Some(x) = frontier.pop() {
        for g in generators {
            let y = g.compose(&x);
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    let mut v: Vec<_> = set.into_iter().collect();
    v.sort();
    v
}

/// The ten nontrivial cycle classes in the order (2), (2)^2, (2)^3, (3), (3)(2), (3)^2, (4), (4)(2), (5), (6).
pub fn cycle_classes() -> &'static [CycleType; 10] {
    static C: Lazy<[CycleType; 10]> = Lazy::new(|| {
        [
            vec![2, 1, 1, 1, 1],
            vec![2, 2, 1, 1],
            vec![2, 2, 2],
            vec![3, 1, 1, 1],
            vec![3, 2, 1],
            vec![3, 3],
            vec![4, 1, 1],
            vec![4, 2],
            vec![5, 1],
            vec![6],
        ]
        .map(Partition::new)
    });
    &C
}

/// Position of a nontrivial cycle type in [`cycle_classes`].
pub fn class_index(t: &CycleType) -> Option<usize> {
    cycle_classes().iter().position(|c| c == t)
}

/// Bitset over the 720 permutation ranks.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PermSet([u64; 12]);

impl PermSet {
    pub fn from_elements(es: &[Permutation]) -> Self {
        let mut b = [0u64; 12];
        for e in es {
            let r = e.rank();
            b[r / 64] |= 1 << (r % 64);
        }
        PermSet(b)
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        let r = p.rank();
        self.0[r / 64] >> (r % 64) & 1 == 1
    }

    pub fn is_subset(&self, other: &PermSet) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a & !b == 0)
    }
}

#[derive(Clone, Debug)]
pub struct TransitiveGroup {
    /// 1..=16; 16 is S6.
    pub index: usize,
    pub label: &'static str,
    pub name: &'static str,
    pub gap_id: (u32, u32),
    pub generators: Vec<Permutation>,
    pub elements: Vec<Permutation>,
    pub set: PermSet,
}

impl TransitiveGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn signature(&self) -> [u8; 10] {
        signature_of(&self.elements)
    }

    pub fn in_a6(&self) -> bool {
        self.elements.iter().all(|e| e.is_even())
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.set.contains(p)
    }

    pub fn is_transitive(&self) -> bool {
        let mut reach = [false; 6];
        for e in &self.elements {
            reach[e.apply(0)] = true;
        }
        reach.iter().all(|&x| x)
    }

    /// Cycle types occurring in the group (including the identity).
    pub fn cycle_types(&self) -> BTreeSet<CycleType> {
        self.elements.iter().map(|e| e.cycle_type()).collect()
    }

    /// Number of elements of each cycle type, in [`cycle_classes`] order.
    pub fn class_counts(&self) -> [usize; 10] {
        let mut c = [0usize; 10];
        for e in &self.elements {
            if let Some(i) = class_index(&e.cycle_type()) {
                c[i] += 1;
            }
        }
        c
    }

    pub fn admits(&self, t: &CycleType) -> bool {
        self.elements.iter().any(|e| &e.cycle_type() == t)
    }

    /// Element set of tau G tau^-1.
    pub fn conjugate(&self, tau: &Permutation) -> Vec<Permutation> {
        let mut v: Vec<_> = self.elements.iter().map(|e| e.conjugate_by(tau)).collect();
        v.sort();
        v
    }

    /// Distinct conjugates in S6, each as a sorted element list.
    pub fn conjugates(&self) -> Vec<Vec<Permutation>> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for tau in all_permutations() {
            let c = self.conjugate(tau);
            if seen.insert(c.clone()) {
                out.push(c);
            }
        }
        out
    }
}

/// α_i = 1 iff some element has cycle class C_i.
pub fn signature_of(elements: &[Permutation]) -> [u8; 10] {
    let mut s = [0u8; 10];
    for e in elements {
        if let Some(i) = class_index(&e.cycle_type()) {
            s[i] = 1;
        }
    }
    s
}

pub fn signature(g: &TransitiveGroup) -> [u8; 10] {
    g.signature()
}

pub fn in_a6(g: &TransitiveGroup) -> bool {
    g.in_a6()
}

struct GroupDef {
    label: &'static str,
    name: &'static str,
    gap: (u32, u32),
    gens: &'static [&'static str],
}

const GROUP_DEFS: [GroupDef; 16] = [
    GroupDef { label: "g1", name: "C6", gap: (6, 2), gens: &["(1,2,3,4,5,6)"] },
    GroupDef { label: "g2", name: "D6(6)", gap: (6, 1), gens: &["(1,3,5)(2,4,6)", "(1,4)(2,3)(5,6)"] },
    GroupDef { label: "g3", name: "D(6)", gap: (12, 4), gens: &["(1,2,3,4,5,6)", "(1,4)(2,3)(5,6)"] },
    GroupDef { label: "g4", name: "A4(6)", gap: (12, 3), gens: &["(1,4)(2,5)", "(1,3,5)(2,4,6)"] },
    GroupDef { label: "g5", name: "F18(6)", gap: (18, 3), gens: &["(2,4,6)", "(1,4)(2,5)(3,6)"] },
    GroupDef { label: "g6", name: "2A4(6)", gap: (24, 13), gens: &["(3,6)", "(1,3,5)(2,4,6)"] },
    GroupDef {
        label: "g7",
        name: "S4(6d)",
        gap: (24, 12),
        gens: &["(1,4)(2,5)", "(1,3,5)(2,4,6)", "(1,5)(2,4)"],
    },
    GroupDef {
        label: "g8",
        name: "S4(6c)",
        gap: (24, 12),
        gens: &["(1,4)(2,5)", "(1,3,5)(2,4,6)", "(1,5)(2,4)(3,6)"],
    },
    GroupDef {
        label: "g9",
        name: "F18(6):2",
        gap: (36, 10),
        gens: &["(2,4,6)", "(1,5)(2,4)", "(1,4,5,2)(3,6)"],
    },
    GroupDef {
        label: "g10",
        name: "F36(6)",
        gap: (36, 9),
        gens: &["(2,4,6)", "(1,5)(2,4)", "(1,4)(2,5)(3,6)"],
    },
    GroupDef {
        label: "g11",
        name: "2wrS3",
        gap: (48, 48),
        gens: &["(3,6)", "(1,3,5)(2,4,6)", "(1,5)(2,4)"],
    },
    GroupDef { label: "g12", name: "PSL(2,5)", gap: (60, 5), gens: &["(1,2,3,4,6)", "(1,4)(5,6)"] },
    GroupDef {
        label: "g13",
        name: "S3wr2",
        gap: (72, 40),
        gens: &["(2,4,6)", "(2,4)", "(1,4)(2,5)(3,6)"],
    },
    GroupDef {
        label: "g14",
        name: "PGL(2,5)",
        gap: (120, 34),
        gens: &["(1,2,3,4,6)", "(1,2)(3,4)(5,6)"],
    },
    GroupDef { label: "g15", name: "A6", gap: (360, 118), gens: &["(1,2,3,4,5)", "(4,5,6)"] },
    GroupDef { label: "S6", name: "S6", gap: (720, 763), gens: &["(1,2)", "(1,2,3,4,5,6)"] },
];

/// Signature column as published for rows g1..g15. Rows g3 and g4 are printed as zero
/// vectors there, which no nontrivial group can have.
pub const TABULATED_SIGNATURES: [[u8; 10]; 15] = [
    [0, 0, 1, 0, 0, 1, 0, 0, 0, 1],
    [0, 0, 1, 0, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 1, 0, 1, 0, 0, 0, 1],
    [1, 1, 1, 0, 0, 1, 0, 0, 0, 1],
    [0, 1, 0, 0, 0, 1, 0, 1, 0, 0],
    [0, 1, 1, 0, 0, 1, 1, 0, 0, 0],
    [0, 1, 0, 1, 0, 1, 0, 1, 0, 0],
    [0, 1, 1, 1, 0, 1, 0, 0, 0, 1],
    [1, 1, 1, 0, 0, 1, 1, 1, 0, 1],
    [0, 1, 0, 0, 0, 1, 0, 0, 1, 0],
    [1, 1, 1, 1, 1, 1, 0, 1, 0, 1],
    [0, 1, 1, 0, 0, 1, 1, 0, 1, 1],
    [0, 1, 0, 1, 0, 1, 0, 1, 1, 0],
];

/// Published per-label counts at height <= 4 and <= 6 for g1..g15.
pub const TABULATED_COUNTS_H4: [u64; 15] =
    [12, 25, 402, 18, 124, 192, 581, 42, 170, 18, 4367, 264, 7616, 160, 264];
pub const TABULATED_COUNTS_H6: [u64; 15] =
    [20, 43, 1185, 34, 222, 394, 2608, 128, 648, 58, 20236, 706, 26024, 534, 1092];

fn build() -> Vec<TransitiveGroup> {
    GROUP_DEFS
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let generators: Vec<Permutation> = s
                .gens
                .iter()
                .map(|g| Permutation::parse(g).expect("valid generator"))
                .collect();
            let elements = expand(&generators);
            let set = PermSet::from_elements(&elements);
            let g = TransitiveGroup {
                index: i + 1,
                label: s.label,
                name: s.name,
                gap_id: s.gap,
                generators,
                elements,
                set,
            };
            assert_eq!(g.order() as u32, s.gap.0, "order of {}", s.label);
            assert!(g.is_transitive(), "{} is not transitive", s.label);
            g
        })
        .collect()
}

static TABLE: Lazy<Vec<TransitiveGroup>> = Lazy::new(build);

/// All sixteen groups, g1..g15 then S6; validated on first use.
pub fn table() -> &'static [TransitiveGroup] {
    &TABLE
}

pub fn by_label(label: &str) -> Option<&'static TransitiveGroup> {
    table().iter().find(|g| g.label.eq_ignore_ascii_case(label))
}

pub fn by_index(i: usize) -> &'static TransitiveGroup {
    &table()[i - 1]
}

pub fn s6() -> &'static TransitiveGroup {
    &table()[15]
}

/// Labels (1-based indices) of the groups consistent with the evidence.
/// `square_disc`: Some(true) means the discriminant is a square, so G lies in A6.
pub fn candidates(
    observed: &BTreeSet<CycleType>,
    conj_type: &CycleType,
    square_disc: Option<bool>,
) -> Result<Vec<usize>> {
    let out: Vec<usize> = table()
        .iter()
        .filter(|g| {
            let types = g.cycle_types();
            observed.iter().all(|t| types.contains(t))
                && types.contains(conj_type)
                && square_disc.map_or(true, |sq| sq == g.in_a6())
        })
        .map(|g| g.index)
        .collect();
    if out.is_empty() {
        return Err(Error::InconsistentEvidence(format!(
            "no transitive group admits {:?} with conjugation {} and parity {:?}",
            observed.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            conj_type,
            square_disc
        )));
    }
    Ok(out)
}

/// True if some conjugate of g is contained in h.
pub fn conjugate_contained(g: &TransitiveGroup, h: &TransitiveGroup) -> bool {
    if h.order() % g.order() != 0 {
        return false;
    }
    all_permutations().iter().any(|tau| {
        g.generators
            .iter()
            .all(|x| h.set.contains(&x.conjugate_by(tau)))
    })
}

/// Containment up to conjugacy as (smaller, larger) index pairs, plus the covering edges.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupLattice {
    pub contains: Vec<(usize, usize)>,
    pub covers: Vec<(usize, usize)>,
}

pub fn lattice() -> &'static GroupLattice {
    static L: Lazy<GroupLattice> = Lazy::new(|| {
        let t = table();
        let mut contains = Vec::new();
        for g in t {
            for h in t {
                if g.index != h.index && conjugate_contained(g, h) {
                    contains.push((g.index, h.index));
                }
            }
        }
        let set: HashSet<(usize, usize)> = contains.iter().copied().collect();
        let covers = contains
            .iter()
            .copied()
            .filter(|&(a, b)| {
                !(1..=16).any(|m| m != a && m != b && set.contains(&(a, m)) && set.contains(&(m, b)))
            })
            .collect();
        GroupLattice { contains, covers }
    });
    &L
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupRecord {
    pub label: String,
    pub name: String,
    pub gap_id: [u32; 2],
    pub order: usize,
    pub generators: Vec<String>,
    pub signature: [u8; 10],
    pub in_a6: bool,
}

pub fn export() -> Vec<GroupRecord> {
    table()
        .iter()
        .map(|g| GroupRecord {
            label: g.label.to_string(),
            name: g.name.to_string(),
            gap_id: [g.gap_id.0, g.gap_id.1],
            order: g.order(),
            generators: g.generators.iter().map(|x| x.to_string()).collect(),
            signature: g.signature(),
            in_a6: g.in_a6(),
        })
        .collect()
}

/// Rows where the recomputed signature disagrees with the published column.
pub fn signature_errata() -> Vec<(usize, [u8; 10], [u8; 10])> {
    table()
        .iter()
        .take(15)
        .filter(|g| g.signature() != TABULATED_SIGNATURES[g.index - 1])
        .map(|g| (g.index, TABULATED_SIGNATURES[g.index - 1], g.signature()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Permutation {
        Permutation::parse(s).unwrap()
    }

    #[test]
    fn expand_examples() {
        assert_eq!(expand(&[perm("(1,2,3,4,5,6)")]).len(), 6);
        assert_eq!(expand(&[perm("(1,2)"), perm("(1,2,3,4,5,6)")]).len(), 720);
        assert_eq!(expand(&[]), vec![Permutation::IDENTITY]);
    }

    #[test]
    fn cycle_type_examples() {
        assert_eq!(perm("(1,2,3,4,5,6)").cycle_type().to_string(), "(6)");
        assert_eq!(perm("(1 2)(3 4)(5 6)").cycle_type().to_string(), "(2,2,2)");
        assert_eq!(Permutation::IDENTITY.cycle_type().to_string(), "(1,1,1,1,1,1)");
        assert_eq!(perm("(1,3,5)(2,4,6)").to_string(), "(1,3,5)(2,4,6)");
    }

    #[test]
    fn rank_is_bijective() {
        let ranks: HashSet<usize> = all_permutations().iter().map(|p| p.rank()).collect();
        assert_eq!(ranks.len(), 720);
        assert_eq!(all_permutations()[17].rank(), 17);
    }

    #[test]
    fn table_validates() {
        let t = table();
        assert_eq!(t.len(), 16);
        for g in t {
            assert_eq!(720 % g.order(), 0);
            assert_eq!(g.order() % 6, 0);
        }
        assert_eq!(by_label("g1").unwrap().signature(), [0, 0, 1, 0, 0, 1, 0, 0, 0, 1]);
        assert_eq!(s6().signature(), [1; 10]);
        assert_eq!(signature_of(&[Permutation::IDENTITY]), [0; 10]);
        assert!(by_label("g15").unwrap().in_a6());
        assert!(!by_label("g1").unwrap().in_a6());
        assert!(!s6().in_a6());
    }

    #[test]
    fn pairwise_non_conjugate() {
        let t = table();
        for a in t {
            for b in t {
                if a.index < b.index && a.order() == b.order() {
                    assert!(!conjugate_contained(a, b), "{} ~ {}", a.label, b.label);
                }
            }
        }
    }

    #[test]
    fn candidate_examples() {
        let six: BTreeSet<_> = [Partition::new(vec![6])].into();
        let c = candidates(&six, &Partition::trivial(6), None).unwrap();
        let expect: Vec<usize> = table()
            .iter()
            .filter(|g| g.signature()[9] == 1)
            .map(|g| g.index)
            .collect();
        assert_eq!(c, expect);
        let all = candidates(&BTreeSet::new(), &Partition::trivial(6), None).unwrap();
        assert_eq!(all.len(), 16);
        let five: BTreeSet<_> = [Partition::new(vec![5, 1])].into();
        assert_eq!(candidates(&five, &Partition::trivial(6), None).unwrap(), vec![12, 14, 15, 16]);
        // a transposition in an even group is impossible
        let tr: BTreeSet<_> = [Partition::new(vec![2, 1, 1, 1, 1])].into();
        assert!(candidates(&tr, &Partition::trivial(6), Some(true)).is_err());
    }

    #[test]
    fn lattice_is_consistent() {
        let l = lattice();
        for &(a, b) in &l.contains {
            let (sa, sb) = (by_index(a).signature(), by_index(b).signature());
            assert!(sa.iter().zip(sb.iter()).all(|(x, y)| x <= y));
            assert!(!l.contains.contains(&(b, a)));
        }
        for g in 1..16 {
            assert!(l.contains.contains(&(g, 16)));
        }
    }
}

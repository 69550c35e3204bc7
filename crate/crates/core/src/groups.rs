//! Permutation-group combinatorics: cycle types, class sizes, derangement
//! proportions, and Burnside/orbit-stabilizer checks.
//!
//! Class tables for S_n and A_n come from the partition formula
//! `|class| = n! / prod(k^(m_k) m_k!)`; explicit generator lists are closed by
//! enumeration. Everything is exact rational arithmetic so the predictions fed
//! to density scans carry no float error. Conjugacy-class splitting inside A_n
//! is deliberately ignored: consumers only need element counts per cycle type.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::Error;

/// Caps keeping partition enumeration and brute-force cross-checks fast.
pub const MAX_SYMMETRIC_DEGREE: u32 = 12;
pub const MAX_EXPLICIT_ORDER: usize = 1_000_000;

/// A permutation of `{1..n}`, stored as 0-based images.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: u32) -> Permutation {
        Permutation { images: (0..n).collect() }
    }

    /// Build from 1-based images, validating a bijection of `{1..n}`.
    pub fn from_one_based(images: &[u32]) -> Result<Permutation, Error> {
        let n = images.len() as u32;
        let mut seen = vec![false; n as usize];
        for &img in images {
            if img == 0 || img > n {
                return Err(Error::Parse(format!("image {} outside 1..={}", img, n)));
            }
            if seen[(img - 1) as usize] {
                return Err(Error::Parse(format!("image {} repeated", img)));
            }
            seen[(img - 1) as usize] = true;
        }
        Ok(Permutation { images: images.iter().map(|&i| i - 1).collect() })
    }

    pub fn degree(&self) -> u32 {
        self.images.len() as u32
    }

    /// `self` after `other` (right-to-left composition).
    fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&i| self.images[i as usize]).collect(),
        }
    }

    pub fn cycle_type(&self) -> CycleType {
        cycle_type_of(&self.images)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// One-line image format, e.g. `2,3,1` for the 3-cycle (1 2 3).
    fn from_str(s: &str) -> Result<Permutation, Error> {
        let images: Result<Vec<u32>, _> = s
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect();
        let images = images.map_err(|_| Error::Parse(format!("bad permutation {:?}", s)))?;
        if images.is_empty() {
            return Err(Error::Parse("empty permutation".into()));
        }
        Permutation::from_one_based(&images)
    }
}

fn cycle_type_of(images: &[u32]) -> CycleType {
    let n = images.len();
    let mut seen = vec![false; n];
    let mut parts = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0u32;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = images[i] as usize;
            len += 1;
        }
        parts.push(len);
    }
    CycleType::new(parts)
}

/// A partition of n recording the cycle lengths of a permutation, kept
/// ascending in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycleType {
    parts: Vec<u32>,
}

impl CycleType {
    pub fn new(mut parts: Vec<u32>) -> CycleType {
        assert!(parts.iter().all(|&p| p > 0), "cycle lengths are positive");
        parts.sort_unstable();
        CycleType { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The n this partitions.
    pub fn n(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Multiplicity of 1 among the parts.
    pub fn fixed_points(&self) -> u32 {
        self.parts.iter().filter(|&&p| p == 1).count() as u32
    }

    /// Sign of any permutation with this cycle type: even iff `n - #parts` is.
    pub fn is_even(&self) -> bool {
        (self.n() - self.parts.len() as u32) % 2 == 0
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl serde::Serialize for CycleType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// S_n, A_n, or a group generated by explicit permutations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupModel {
    Symmetric(u32),
    Alternating(u32),
    Explicit { degree: u32, generators: Vec<Permutation> },
}

impl GroupModel {
    /// Degree of the natural action.
    pub fn degree(&self) -> u32 {
        match self {
            GroupModel::Symmetric(n) | GroupModel::Alternating(n) => *n,
            GroupModel::Explicit { degree, .. } => *degree,
        }
    }

    pub fn explicit(generators: Vec<Permutation>) -> Result<GroupModel, Error> {
        let Some(first) = generators.first() else {
            return Err(Error::Domain("explicit model needs a generator or a degree".into()));
        };
        let degree = first.degree();
        if generators.iter().any(|g| g.degree() != degree) {
            return Err(Error::Domain("generators act on different degrees".into()));
        }
        Ok(GroupModel::Explicit { degree, generators })
    }
}

impl fmt::Display for GroupModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupModel::Symmetric(n) => write!(f, "S{}", n),
            GroupModel::Alternating(n) => write!(f, "A{}", n),
            GroupModel::Explicit { degree, generators } => {
                write!(f, "explicit(degree {}, {} generators)", degree, generators.len())
            }
        }
    }
}

impl FromStr for GroupModel {
    type Err = Error;

    /// `S<n>`, `A<n>`, or semicolon-joined one-line permutations
    /// (`2,3,1;2,1,3`).
    fn from_str(s: &str) -> Result<GroupModel, Error> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix(['S', 's']) {
            if let Ok(n) = rest.parse::<u32>() {
                return Ok(GroupModel::Symmetric(n));
            }
        }
        if let Some(rest) = s.strip_prefix(['A', 'a']) {
            if let Ok(n) = rest.parse::<u32>() {
                return Ok(GroupModel::Alternating(n));
            }
        }
        if s.contains(',') {
            let gens: Result<Vec<Permutation>, Error> =
                s.split(';').map(|part| part.parse()).collect();
            return GroupModel::explicit(gens?);
        }
        Err(Error::Parse(format!("unrecognized group model {:?}", s)))
    }
}

/// Element counts per cycle type; counts sum to the group order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassTable {
    degree: u32,
    entries: Vec<(CycleType, u64)>,
}

impl ClassTable {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn entries(&self) -> &[(CycleType, u64)] {
        &self.entries
    }

    pub fn order(&self) -> u64 {
        self.entries.iter().map(|(_, c)| c).sum()
    }

    pub fn count_of(&self, t: &CycleType) -> u64 {
        self.entries
            .iter()
            .find(|(u, _)| u == t)
            .map(|(_, c)| *c)
            .unwrap_or(0)
    }
}

fn factorial(n: u32) -> u64 {
    (2..=n as u64).product()
}

fn partitions_of(n: u32) -> Vec<Vec<u32>> {
    // descending parts, generated largest-first
    fn go(remaining: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        let mut k = remaining.min(max);
        while k >= 1 {
            prefix.push(k);
            go(remaining - k, k, prefix, out);
            prefix.pop();
            k -= 1;
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// `n! / z_lambda` with `z_lambda = prod k^(m_k) m_k!`.
fn symmetric_class_size(n: u32, parts: &[u32]) -> u64 {
    let mut mult: BTreeMap<u32, u32> = BTreeMap::new();
    for &k in parts {
        *mult.entry(k).or_insert(0) += 1;
    }
    let mut z = 1u64;
    for (k, m) in mult {
        z *= (k as u64).pow(m) * factorial(m);
    }
    factorial(n) / z
}

type MemoKey = (bool, u32);

fn memo() -> &'static Mutex<HashMap<MemoKey, Arc<ClassTable>>> {
    static MEMO: OnceLock<Mutex<HashMap<MemoKey, Arc<ClassTable>>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Class table of the model: all partitions for S_n, even partitions for A_n,
/// exhaustive closure for explicit groups.
pub fn class_table(model: &GroupModel) -> Result<Arc<ClassTable>, Error> {
    match model {
        GroupModel::Symmetric(n) => {
            check_sym_degree(*n, 1)?;
            let key = (false, *n);
            if let Some(t) = memo().lock().unwrap().get(&key) {
                return Ok(t.clone());
            }
            let table = Arc::new(formula_table(*n, false));
            memo().lock().unwrap().insert(key, table.clone());
            Ok(table)
        }
        GroupModel::Alternating(n) => {
            check_sym_degree(*n, 2)?;
            let key = (true, *n);
            if let Some(t) = memo().lock().unwrap().get(&key) {
                return Ok(t.clone());
            }
            let table = Arc::new(formula_table(*n, true));
            memo().lock().unwrap().insert(key, table.clone());
            Ok(table)
        }
        GroupModel::Explicit { degree, generators } => {
            let elements = enumerate_explicit(*degree, generators)?;
            let mut tally: BTreeMap<CycleType, u64> = BTreeMap::new();
            for g in &elements {
                *tally.entry(cycle_type_of(g)).or_insert(0) += 1;
            }
            Ok(Arc::new(ClassTable {
                degree: *degree,
                entries: tally.into_iter().collect(),
            }))
        }
    }
}

fn check_sym_degree(n: u32, min: u32) -> Result<(), Error> {
    if n < min || n > MAX_SYMMETRIC_DEGREE {
        return Err(Error::Bounds(format!(
            "degree {} outside [{}, {}]",
            n, min, MAX_SYMMETRIC_DEGREE
        )));
    }
    Ok(())
}

fn formula_table(n: u32, even_only: bool) -> ClassTable {
    let mut entries: Vec<(CycleType, u64)> = Vec::new();
    for parts in partitions_of(n) {
        let t = CycleType::new(parts);
        if even_only && !t.is_even() {
            continue;
        }
        let size = symmetric_class_size(n, t.parts());
        entries.push((t, size));
    }
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    ClassTable { degree: n, entries }
}

fn enumerate_explicit(degree: u32, generators: &[Permutation]) -> Result<Vec<Vec<u32>>, Error> {
    if generators.iter().any(|g| g.degree() != degree) {
        return Err(Error::Domain("generator degree mismatch".into()));
    }
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut queue: VecDeque<Permutation> = VecDeque::new();
    seen.insert(id.images.clone());
    queue.push_back(id);
    while let Some(g) = queue.pop_front() {
        for gen in generators {
            let h = gen.compose(&g);
            if seen.insert(h.images.clone()) {
                if seen.len() > MAX_EXPLICIT_ORDER {
                    return Err(Error::Bounds(format!(
                        "explicit group exceeds order cap {}",
                        MAX_EXPLICIT_ORDER
                    )));
                }
                queue.push_back(h);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

fn ratio(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Fraction of elements with no fixed point in the natural action.
pub fn derangement_proportion(model: &GroupModel) -> Result<BigRational, Error> {
    let table = class_table(model)?;
    let total = table.order();
    let deranged: u64 = table
        .entries()
        .iter()
        .filter(|(t, _)| t.fixed_points() == 0)
        .map(|(_, c)| c)
        .sum();
    Ok(ratio(deranged, total))
}

/// Each cycle type mapped to `count / order`; the values sum to 1 exactly.
pub fn predicted_factor_distribution(
    model: &GroupModel,
) -> Result<BTreeMap<CycleType, BigRational>, Error> {
    let table = class_table(model)?;
    let total = table.order();
    Ok(table
        .entries()
        .iter()
        .map(|(t, c)| (t.clone(), ratio(*c, total)))
        .collect())
}

/// `(1/|G|) sum over g of |Fix(g)|`; equals the orbit count by Burnside, so 1
/// for any transitive action.
pub fn burnside_average_fixed_points(model: &GroupModel) -> Result<BigRational, Error> {
    let table = class_table(model)?;
    let total = table.order();
    let fixed: u64 = table
        .entries()
        .iter()
        .map(|(t, c)| t.fixed_points() as u64 * c)
        .sum();
    Ok(ratio(fixed, total))
}

/// Direct enumeration check of `|G| = |Stab(point)| * |Orb(point)|` for the
/// natural action; `point` is 1-based. Enumeration is capped at order 10^6.
pub fn orbit_stabilizer_check(model: &GroupModel, point: u32) -> Result<bool, Error> {
    let degree = model.degree();
    if point == 0 || point > degree {
        return Err(Error::Domain(format!("point {} outside 1..={}", point, degree)));
    }
    let pt = point - 1;
    let mut order = 0u64;
    let mut stab = 0u64;
    let mut orbit: HashSet<u32> = HashSet::new();
    let mut visit = |images: &[u32]| {
        order += 1;
        let img = images[pt as usize];
        if img == pt {
            stab += 1;
        }
        orbit.insert(img);
    };
    match model {
        GroupModel::Symmetric(n) => {
            check_enumerable(factorial(*n))?;
            for_each_permutation(*n, &mut |p| visit(p));
        }
        GroupModel::Alternating(n) => {
            check_sym_degree(*n, 2)?;
            check_enumerable(factorial(*n) / 2)?;
            for_each_permutation(*n, &mut |p| {
                if cycle_type_of(p).is_even() {
                    visit(p);
                }
            });
        }
        GroupModel::Explicit { degree, generators } => {
            for g in enumerate_explicit(*degree, generators)? {
                visit(&g);
            }
        }
    }
    Ok(order == stab * orbit.len() as u64)
}

fn check_enumerable(order: u64) -> Result<(), Error> {
    if order > MAX_EXPLICIT_ORDER as u64 {
        return Err(Error::Bounds(format!(
            "order {} exceeds enumeration cap {}",
            order, MAX_EXPLICIT_ORDER
        )));
    }
    Ok(())
}

/// Heap's algorithm, streaming every permutation of `0..n` to the callback.
fn for_each_permutation(n: u32, f: &mut impl FnMut(&[u32])) {
    let mut a: Vec<u32> = (0..n).collect();
    let mut c = vec![0usize; n as usize];
    f(&a);
    let mut i = 0usize;
    while i < n as usize {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            f(&a);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

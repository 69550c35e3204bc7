//! Executable constraint sets over primes: membership with ramified
//! exclusion, predicted Chebotarev densities, intersection scans, the
//! finite-intersection growth harness, and the headline sweeps (gpru,
//! Sophie Germain, Artin, Dedekind statistics).
//!
//! Every constraint carries its finite ramified set, represented by the
//! integer whose prime divisors are excluded (m for cyclotomic constraints,
//! 2D for quadratic ones, Disc(f)*lc(f) for polynomial ones). Excluded primes
//! are dropped from both the numerator and the denominator of every density
//! estimate, so empirical ratios stay comparable to |C|/|G|.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::groups::{
    class_table, derangement_proportion, predicted_factor_distribution, CycleType, GroupModel,
};
use crate::modular::{
    euler_phi, is_fundamental_discriminant, is_primitive_root, kronecker, pow_mod,
    smallest_primitive_root, Residue,
};
use crate::polyarith::{discriminant, factor_type_mod_p, has_root_mod_p, IntPoly};
use crate::primes::{gcd_u64, is_prime_u64, SieveTable};

/// Outcome of testing one prime against one constraint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    In,
    Out,
    /// The prime lies in the constraint's finite ramified set and carries no
    /// information; scans skip it entirely.
    Excluded,
}

/// Integer whose prime divisors form the constraint's excluded set.
#[derive(Debug, Clone, PartialEq, Eq)]
enum BadSet {
    None,
    Small(u64),
    Big(BigInt),
}

impl BadSet {
    fn from_bigint(b: BigInt) -> BadSet {
        let b = b.abs();
        match b.to_u64() {
            Some(v) => BadSet::Small(v),
            None => BadSet::Big(b),
        }
    }

    fn excludes(&self, p: u64) -> bool {
        match self {
            BadSet::None => false,
            BadSet::Small(b) => b % p == 0,
            BadSet::Big(b) => b.mod_floor(&BigInt::from(p)).is_zero(),
        }
    }
}

/// The defining test of a constraint.
#[derive(Debug, Clone, PartialEq)]
pub enum ConstraintKind {
    /// U_m: Phi_m has no zero mod p, equivalently p is not 1 mod m. `m >= 3`.
    CyclotomicNonSplit(u64),
    /// Phi_m has a zero mod p, equivalently p is 1 mod m.
    CyclotomicHasRoot(u64),
    /// T_D: x^2 - D has a zero mod p (Kronecker symbol 1).
    QuadHasRoot(i64),
    /// The complement of T_D away from the ramified set.
    QuadNoRoot(i64),
    /// f has no zero mod p (the derangement-class proxy).
    PolyNoRoot { poly: IntPoly, model: Option<GroupModel> },
    /// f splits into linear factors mod p.
    PolySplitsCompletely { poly: IntPoly, model: Option<GroupModel> },
    /// f has a zero mod p.
    PolyHasRoot { poly: IntPoly, model: Option<GroupModel> },
    /// p = residue (mod modulus), gcd(residue, modulus) = 1.
    Congruence { residue: u64, modulus: u64 },
    /// (p - 1)/2 is prime.
    SophieGermain,
    /// m is a primitive root mod p.
    PrimitiveRootOf(i64),
}

/// A predicate on primes together with its finite ramified set.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintSpec {
    kind: ConstraintKind,
    bad: BadSet,
}

fn is_perfect_square(m: i64) -> bool {
    if m < 0 {
        return false;
    }
    let r = (m as u64).isqrt();
    r * r == m as u64
}

impl ConstraintSpec {
    pub fn cyclotomic_non_split(m: u64) -> Result<ConstraintSpec, Error> {
        if m < 3 {
            return Err(Error::Domain(format!("U_m needs m >= 3, got {}", m)));
        }
        Ok(ConstraintSpec { kind: ConstraintKind::CyclotomicNonSplit(m), bad: BadSet::Small(m) })
    }

    pub fn cyclotomic_has_root(m: u64) -> Result<ConstraintSpec, Error> {
        if m == 0 {
            return Err(Error::Domain("cyclotomic index must be positive".into()));
        }
        Ok(ConstraintSpec { kind: ConstraintKind::CyclotomicHasRoot(m), bad: BadSet::Small(m) })
    }

    pub fn quad_has_root(d: i64) -> Result<ConstraintSpec, Error> {
        Self::check_quad(d)?;
        Ok(ConstraintSpec {
            kind: ConstraintKind::QuadHasRoot(d),
            bad: BadSet::Small(2 * d.unsigned_abs()),
        })
    }

    pub fn quad_no_root(d: i64) -> Result<ConstraintSpec, Error> {
        Self::check_quad(d)?;
        Ok(ConstraintSpec {
            kind: ConstraintKind::QuadNoRoot(d),
            bad: BadSet::Small(2 * d.unsigned_abs()),
        })
    }

    fn check_quad(d: i64) -> Result<(), Error> {
        if d == 0 || is_perfect_square(d) {
            return Err(Error::Domain(format!(
                "quadratic constraint needs a non-square D, got {}",
                d
            )));
        }
        Ok(())
    }

    pub fn poly_no_root(poly: IntPoly, model: Option<GroupModel>) -> Result<ConstraintSpec, Error> {
        let bad = Self::poly_bad_set(&poly, model.as_ref())?;
        Ok(ConstraintSpec { kind: ConstraintKind::PolyNoRoot { poly, model }, bad })
    }

    pub fn poly_splits_completely(
        poly: IntPoly,
        model: Option<GroupModel>,
    ) -> Result<ConstraintSpec, Error> {
        let bad = Self::poly_bad_set(&poly, model.as_ref())?;
        Ok(ConstraintSpec { kind: ConstraintKind::PolySplitsCompletely { poly, model }, bad })
    }

    pub fn poly_has_root(poly: IntPoly, model: Option<GroupModel>) -> Result<ConstraintSpec, Error> {
        let bad = Self::poly_bad_set(&poly, model.as_ref())?;
        Ok(ConstraintSpec { kind: ConstraintKind::PolyHasRoot { poly, model }, bad })
    }

    fn poly_bad_set(poly: &IntPoly, model: Option<&GroupModel>) -> Result<BadSet, Error> {
        let Some(deg) = poly.degree().filter(|&d| d >= 1) else {
            return Err(Error::Domain("polynomial constraint needs degree >= 1".into()));
        };
        let disc = discriminant(poly)?;
        if disc.is_zero() {
            return Err(Error::Domain(
                "polynomial has repeated roots (zero discriminant)".into(),
            ));
        }
        if let Some(model) = model {
            if model.degree() as usize != deg {
                return Err(Error::Domain(format!(
                    "model degree {} does not match polynomial degree {}",
                    model.degree(),
                    deg
                )));
            }
        }
        Ok(BadSet::from_bigint(disc * poly.leading_coefficient().unwrap()))
    }

    pub fn congruence(residue: u64, modulus: u64) -> Result<ConstraintSpec, Error> {
        if modulus < 2 {
            return Err(Error::Domain(format!("modulus {} must be at least 2", modulus)));
        }
        let residue = residue % modulus;
        if gcd_u64(residue, modulus) != 1 {
            return Err(Error::Domain(format!(
                "residue {} shares a factor with modulus {}",
                residue, modulus
            )));
        }
        Ok(ConstraintSpec {
            kind: ConstraintKind::Congruence { residue, modulus },
            bad: BadSet::Small(modulus),
        })
    }

    pub fn sophie_germain() -> ConstraintSpec {
        ConstraintSpec { kind: ConstraintKind::SophieGermain, bad: BadSet::None }
    }

    pub fn primitive_root_of(m: i64) -> Result<ConstraintSpec, Error> {
        if m == 0 || m == 1 || m == -1 {
            return Err(Error::Domain(format!("{} can never be a primitive root basis", m)));
        }
        if is_perfect_square(m) {
            return Err(Error::Domain(format!("{} is a perfect square", m)));
        }
        Ok(ConstraintSpec {
            kind: ConstraintKind::PrimitiveRootOf(m),
            bad: BadSet::Small(m.unsigned_abs()),
        })
    }

    pub fn kind(&self) -> &ConstraintKind {
        &self.kind
    }

    pub fn is_excluded(&self, p: u64) -> bool {
        self.bad.excludes(p)
    }

    /// Test one prime. Excluded primes short-circuit before the defining test.
    pub fn membership(&self, p: u64) -> Membership {
        if self.is_excluded(p) {
            return Membership::Excluded;
        }
        let holds = match &self.kind {
            ConstraintKind::CyclotomicNonSplit(m) => p % m != 1 % m,
            ConstraintKind::CyclotomicHasRoot(m) => p % m == 1 % m,
            ConstraintKind::QuadHasRoot(d) => kronecker(*d, p as i64) == 1,
            ConstraintKind::QuadNoRoot(d) => kronecker(*d, p as i64) == -1,
            ConstraintKind::PolyNoRoot { poly, .. } => {
                !has_root_mod_p(poly, p).expect("lc unit for unexcluded prime")
            }
            ConstraintKind::PolySplitsCompletely { poly, .. } => factor_type_mod_p(poly, p)
                .expect("lc unit for unexcluded prime")
                .all_linear(),
            ConstraintKind::PolyHasRoot { poly, .. } => {
                has_root_mod_p(poly, p).expect("lc unit for unexcluded prime")
            }
            ConstraintKind::Congruence { residue, modulus } => p % modulus == *residue,
            ConstraintKind::SophieGermain => p > 2 && is_prime_u64((p - 1) / 2),
            ConstraintKind::PrimitiveRootOf(m) => {
                is_primitive_root(m.rem_euclid(p as i64) as u64, p)
            }
        };
        if holds {
            Membership::In
        } else {
            Membership::Out
        }
    }

    /// Chebotarev-predicted density when one exists. Polynomial variants use
    /// `model` when given, else the model declared on the constraint; without
    /// either the density is unknown (`None`). Sophie Germain and
    /// primitive-root constraints carry only an infinitude claim, never a
    /// density.
    pub fn predicted_density(
        &self,
        model: Option<&GroupModel>,
    ) -> Result<Option<BigRational>, Error> {
        let one = BigRational::one;
        let inv = |n: u64| BigRational::new(BigInt::one(), BigInt::from(n));
        Ok(match &self.kind {
            ConstraintKind::CyclotomicNonSplit(m) => Some(one() - inv(euler_phi(*m)?)),
            ConstraintKind::CyclotomicHasRoot(m) => Some(inv(euler_phi(*m)?)),
            ConstraintKind::QuadHasRoot(_) | ConstraintKind::QuadNoRoot(_) => Some(inv(2)),
            ConstraintKind::Congruence { modulus, .. } => Some(inv(euler_phi(*modulus)?)),
            ConstraintKind::PolyNoRoot { model: own, .. } => {
                match model.or(own.as_ref()) {
                    Some(m) => Some(derangement_proportion(m)?),
                    None => None,
                }
            }
            ConstraintKind::PolySplitsCompletely { model: own, .. } => {
                match model.or(own.as_ref()) {
                    Some(m) => Some(inv(class_table(m)?.order())),
                    None => None,
                }
            }
            ConstraintKind::PolyHasRoot { model: own, .. } => match model.or(own.as_ref()) {
                Some(m) => Some(one() - derangement_proportion(m)?),
                None => None,
            },
            ConstraintKind::SophieGermain | ConstraintKind::PrimitiveRootOf(_) => None,
        })
    }

    /// The congruence content of the constraint, when it has one: a modulus
    /// and the allowed residues mod it.
    fn congruence_classes(&self) -> Result<(u64, Vec<u64>), Error> {
        match &self.kind {
            ConstraintKind::CyclotomicNonSplit(m) => Ok((
                *m,
                (0..*m).filter(|&r| gcd_u64(r, *m) == 1 && r != 1 % m).collect(),
            )),
            ConstraintKind::CyclotomicHasRoot(m) => Ok((*m, vec![1 % m])),
            ConstraintKind::Congruence { residue, modulus } => Ok((*modulus, vec![*residue])),
            ConstraintKind::QuadHasRoot(d) | ConstraintKind::QuadNoRoot(d) => {
                let target = if matches!(self.kind, ConstraintKind::QuadHasRoot(_)) { 1 } else { -1 };
                // the symbol (D|.) restricted to arguments coprime to 2D is a
                // character mod 8|D|
                let m = 8 * d.unsigned_abs();
                if m > 1_000_000 {
                    return Err(Error::Bounds(format!(
                        "character modulus {} too large to enumerate",
                        m
                    )));
                }
                let allowed = (0..m)
                    .filter(|&r| {
                        gcd_u64(r, 2 * d.unsigned_abs()) == 1 && kronecker(*d, r as i64) == target
                    })
                    .collect();
                Ok((m, allowed))
            }
            _ => Err(Error::Inapplicable(format!(
                "{} is not congruence-expressible",
                self.describe()
            ))),
        }
    }

    /// Short human-readable form, mirroring the config syntax.
    pub fn describe(&self) -> String {
        match &self.kind {
            ConstraintKind::CyclotomicNonSplit(m) => format!("U {}", m),
            ConstraintKind::CyclotomicHasRoot(m) => format!("phiroot {}", m),
            ConstraintKind::QuadHasRoot(d) => format!("T {}", d),
            ConstraintKind::QuadNoRoot(d) => format!("Tbar {}", d),
            ConstraintKind::PolyNoRoot { poly, model } => match model {
                Some(m) => format!("polynoroot {} {}", poly, m),
                None => format!("polynoroot {}", poly),
            },
            ConstraintKind::PolySplitsCompletely { poly, model } => match model {
                Some(m) => format!("polysplits {} {}", poly, m),
                None => format!("polysplits {}", poly),
            },
            ConstraintKind::PolyHasRoot { poly, model } => match model {
                Some(m) => format!("polyroot {} {}", poly, m),
                None => format!("polyroot {}", poly),
            },
            ConstraintKind::Congruence { residue, modulus } => {
                format!("cong {} {}", residue, modulus)
            }
            ConstraintKind::SophieGermain => "sg".into(),
            ConstraintKind::PrimitiveRootOf(m) => format!("proot {}", m),
        }
    }
}

impl fmt::Display for ConstraintSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

/// Parse one line of the constraint mini-language:
/// `U 7`, `phiroot 5`, `T -8`, `Tbar 5`, `polynoroot -1,-1,0,1 S3`,
/// `polysplits 1,0,1`, `polyroot ...`, `cong 3 8`, `sg`, `proot 2`.
pub fn parse_constraint_line(line: &str) -> Result<ConstraintSpec, Error> {
    let tokens: Vec<&str> = line.split_whitespace().collect();
    let bad = |why: &str| Error::Parse(format!("constraint {:?}: {}", line, why));
    let int = |tok: &str| tok.parse::<i64>().map_err(|_| bad(&format!("bad integer {:?}", tok)));
    let nat = |tok: &str| tok.parse::<u64>().map_err(|_| bad(&format!("bad natural {:?}", tok)));
    match tokens.as_slice() {
        ["U" | "u", m] => ConstraintSpec::cyclotomic_non_split(nat(m)?),
        ["phiroot", m] => ConstraintSpec::cyclotomic_has_root(nat(m)?),
        ["T" | "t", d] => ConstraintSpec::quad_has_root(int(d)?),
        ["Tbar" | "tbar", d] => ConstraintSpec::quad_no_root(int(d)?),
        ["polynoroot", coeffs, rest @ ..] => {
            ConstraintSpec::poly_no_root(coeffs.parse()?, parse_opt_model(rest, line)?)
        }
        ["polysplits", coeffs, rest @ ..] => {
            ConstraintSpec::poly_splits_completely(coeffs.parse()?, parse_opt_model(rest, line)?)
        }
        ["polyroot", coeffs, rest @ ..] => {
            ConstraintSpec::poly_has_root(coeffs.parse()?, parse_opt_model(rest, line)?)
        }
        ["cong", a, m] => ConstraintSpec::congruence(nat(a)?, nat(m)?),
        ["sg"] => Ok(ConstraintSpec::sophie_germain()),
        ["proot", m] => ConstraintSpec::primitive_root_of(int(m)?),
        [] => Err(bad("empty line")),
        _ => Err(bad("unrecognized constraint")),
    }
}

fn parse_opt_model(rest: &[&str], line: &str) -> Result<Option<GroupModel>, Error> {
    match rest {
        [] => Ok(None),
        [model] => Ok(Some(model.parse()?)),
        _ => Err(Error::Parse(format!("constraint {:?}: too many fields", line))),
    }
}

/// Parse a whole constraint file: one constraint per line, `#` comments and
/// blank lines ignored. Errors name the offending line.
pub fn parse_constraint_file(content: &str) -> Result<Vec<ConstraintSpec>, Error> {
    let mut specs = Vec::new();
    for (idx, raw) in content.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let spec = parse_constraint_line(line)
            .map_err(|e| Error::Parse(format!("line {}: {}", idx + 1, e)))?;
        specs.push(spec);
    }
    Ok(specs)
}

pub mod rational_serde {
    //! `Option<BigRational>` as an optional `"num/den"` string.

    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use std::str::FromStr;

    pub fn serialize<S: Serializer>(v: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(|r| r.to_string()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<Option<BigRational>, D::Error> {
        let raw: Option<String> = Option::deserialize(d)?;
        raw.map(|s| BigRational::from_str(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}

/// Running counts recorded at one checkpoint bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub bound: u64,
    pub prime_count: u64,
    pub excluded_count: u64,
    pub member_count: u64,
    pub empirical_ratio: f64,
}

/// Empirical count versus predicted density over primes up to a bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    pub bound: u64,
    /// pi(N) over all primes, before exclusions.
    pub prime_count: u64,
    /// Primes skipped because some constraint excluded them.
    pub excluded_count: u64,
    pub member_count: u64,
    /// member_count / (prime_count - excluded_count), 0 on an empty denominator.
    pub empirical_ratio: f64,
    #[serde(with = "rational_serde")]
    pub predicted: Option<BigRational>,
    pub checkpoints: Vec<Checkpoint>,
}

impl DensityReport {
    /// The prediction as a float, when one exists.
    pub fn predicted_f64(&self) -> Option<f64> {
        self.predicted.as_ref().and_then(|p| p.to_f64())
    }

    /// |empirical - predicted|, when a prediction exists.
    pub fn deviation(&self) -> Option<f64> {
        self.predicted_f64().map(|p| (self.empirical_ratio - p).abs())
    }
}

fn ratio_f64(num: u64, den: u64) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

fn checkpoints_valid(checkpoints: &[u64], n: u64) -> Result<(), Error> {
    if checkpoints.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Domain("checkpoints must be sorted ascending".into()));
    }
    if checkpoints.last().is_some_and(|&c| c > n) {
        return Err(Error::Domain("checkpoints must not exceed the scan bound".into()));
    }
    Ok(())
}

fn scan_impl(
    specs: &[ConstraintSpec],
    n: u64,
    checkpoints: &[u64],
    table: &SieveTable,
    mut on_member: impl FnMut(u64),
) -> Result<DensityReport, Error> {
    if specs.is_empty() {
        return Err(Error::Domain("no constraints given".into()));
    }
    if n > table.limit() {
        return Err(Error::Bounds(format!(
            "scan bound {} beyond sieve limit {}",
            n,
            table.limit()
        )));
    }
    checkpoints_valid(checkpoints, n)?;

    let mut recorded = Vec::with_capacity(checkpoints.len());
    let mut next_cp = 0usize;
    let mut primes_seen = 0u64;
    let mut excluded = 0u64;
    let mut members = 0u64;
    let record_until = |bound: u64, primes_seen: u64, excluded: u64, members: u64,
                            next_cp: &mut usize,
                            recorded: &mut Vec<Checkpoint>| {
        while *next_cp < checkpoints.len() && checkpoints[*next_cp] < bound {
            recorded.push(Checkpoint {
                bound: checkpoints[*next_cp],
                prime_count: primes_seen,
                excluded_count: excluded,
                member_count: members,
                empirical_ratio: ratio_f64(members, primes_seen - excluded),
            });
            *next_cp += 1;
        }
    };

    for p in table.primes() {
        if p > n {
            break;
        }
        record_until(p, primes_seen, excluded, members, &mut next_cp, &mut recorded);
        primes_seen += 1;
        let mut verdict = Membership::In;
        for spec in specs {
            match spec.membership(p) {
                Membership::Excluded => {
                    verdict = Membership::Excluded;
                    break;
                }
                Membership::Out => verdict = Membership::Out,
                Membership::In => {}
            }
        }
        match verdict {
            Membership::Excluded => excluded += 1,
            Membership::In => {
                members += 1;
                on_member(p);
            }
            Membership::Out => {}
        }
    }
    record_until(n + 1, primes_seen, excluded, members, &mut next_cp, &mut recorded);

    Ok(DensityReport {
        bound: n,
        prime_count: primes_seen,
        excluded_count: excluded,
        member_count: members,
        empirical_ratio: ratio_f64(members, primes_seen - excluded),
        predicted: joint_predicted(specs)?,
        checkpoints: recorded,
    })
}

/// Product of the individual predicted densities when all are known, with one
/// refinement: if every constraint is congruence-expressible and the system
/// has no common residue class, the prediction is exactly zero.
fn joint_predicted(specs: &[ConstraintSpec]) -> Result<Option<BigRational>, Error> {
    if let Ok(false) = crt_compatible(specs) {
        return Ok(Some(BigRational::zero()));
    }
    let mut product = BigRational::one();
    for spec in specs {
        match spec.predicted_density(None)? {
            Some(d) => product *= d,
            None => return Ok(None),
        }
    }
    Ok(Some(product))
}

/// Count primes up to `n` lying in every constraint simultaneously. A prime
/// excluded by any constraint is skipped from both numerator and denominator.
pub fn scan(
    specs: &[ConstraintSpec],
    n: u64,
    checkpoints: &[u64],
    table: &SieveTable,
) -> Result<DensityReport, Error> {
    scan_impl(specs, n, checkpoints, table, |_| {})
}

/// Whether the conjunction of congruence conditions admits a residue class
/// modulo the lcm of the moduli. Errors with [`Error::Inapplicable`] when a
/// non-congruence constraint is present.
pub fn crt_compatible(specs: &[ConstraintSpec]) -> Result<bool, Error> {
    const LCM_CAP: u64 = 10_000_000;
    let mut modulus = 1u64;
    let mut residues: Vec<u64> = vec![0];
    for spec in specs {
        let (m, allowed) = spec.congruence_classes()?;
        if allowed.is_empty() {
            return Ok(false);
        }
        let g = gcd_u64(modulus, m);
        let l = modulus / g * m;
        if l > LCM_CAP {
            return Err(Error::Bounds(format!(
                "combined modulus {} exceeds cap {}",
                l, LCM_CAP
            )));
        }
        let allowed: std::collections::HashSet<u64> = allowed.into_iter().collect();
        let mut next: Vec<u64> = Vec::new();
        for &r in &residues {
            let mut x = r;
            while x < l {
                if allowed.contains(&(x % m)) {
                    next.push(x);
                }
                x += modulus;
            }
        }
        if next.is_empty() {
            return Ok(false);
        }
        modulus = l;
        residues = next;
    }
    Ok(true)
}

/// PASS/FAIL verdict for growth-style harnesses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => write!(f, "PASS"),
            Verdict::Fail => write!(f, "FAIL"),
        }
    }
}

/// Scan plus a growth verdict over the checkpoints.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FipReport {
    pub report: DensityReport,
    pub verdict: Verdict,
}

/// Desk analog of the finite intersection property: member counts must grow
/// strictly across at least three checkpoints and end positive.
pub fn fip_report(
    specs: &[ConstraintSpec],
    checkpoints: &[u64],
    table: &SieveTable,
) -> Result<FipReport, Error> {
    if checkpoints.len() < 3 {
        return Err(Error::Domain("need at least three checkpoints".into()));
    }
    if checkpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain("checkpoints must be strictly increasing".into()));
    }
    let n = *checkpoints.last().unwrap();
    let report = scan(specs, n, checkpoints, table)?;
    let counts: Vec<u64> = report.checkpoints.iter().map(|c| c.member_count).collect();
    let growing = counts.windows(2).all(|w| w[0] < w[1]);
    let verdict = if growing && counts.last().copied().unwrap_or(0) > 0 {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(FipReport { report, verdict })
}

/// The subbase: U_m for 3 <= m <= m_max, T_{-8}, the complements Tbar_D over
/// the given fundamental discriminants (never -8), and a no-root constraint
/// per supplied polynomial.
pub fn build_subbase_g(
    m_max: u64,
    fundamental_ds: &[i64],
    polys: &[(IntPoly, GroupModel)],
) -> Result<Vec<ConstraintSpec>, Error> {
    if m_max < 3 {
        return Err(Error::Domain(format!("m_max {} below 3", m_max)));
    }
    let mut specs = Vec::new();
    for m in 3..=m_max {
        specs.push(ConstraintSpec::cyclotomic_non_split(m)?);
    }
    specs.push(ConstraintSpec::quad_has_root(-8)?);
    for &d in fundamental_ds {
        if d == -8 {
            return Err(Error::Domain(
                "-8 enters the subbase as T_{-8}, not as a complement".into(),
            ));
        }
        if !is_fundamental_discriminant(d) {
            return Err(Error::Domain(format!("{} is not a fundamental discriminant", d)));
        }
        specs.push(ConstraintSpec::quad_no_root(d)?);
    }
    for (poly, model) in polys {
        specs.push(ConstraintSpec::poly_no_root(poly.clone(), Some(model.clone()))?);
    }
    Ok(specs)
}

/// One coordinate of the primitive-root equivalence: the exponent `b` is
/// coprime to p-1 exactly when `zeta_p^b` generates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GpruWitness {
    pub p: u64,
    /// Canonical generator: the smallest primitive root mod p.
    pub zeta: u64,
    pub b: u64,
    /// `zeta^b mod p`.
    pub value: u64,
    /// `gcd(b, p-1) = 1`.
    pub coprime: bool,
    /// `value` is a primitive root mod p (checked independently of `b`).
    pub primitive: bool,
}

impl GpruWitness {
    /// The tested equivalence.
    pub fn holds(&self) -> bool {
        self.coprime == self.primitive
    }
}

/// Build the witness at a single coordinate `(p, b)`, `p` an odd prime and
/// `0 <= b < p-1`.
pub fn gpru_coordinate(p: u64, b: u64) -> Result<GpruWitness, Error> {
    if p < 3 || !is_prime_u64(p) {
        return Err(Error::Domain(format!("{} is not an odd prime", p)));
    }
    if b >= p - 1 {
        return Err(Error::Domain(format!("exponent {} outside [0, {})", b, p - 1)));
    }
    let zeta = smallest_primitive_root(p);
    let value = pow_mod(zeta, b, p)?;
    Ok(GpruWitness {
        p,
        zeta,
        b,
        value,
        coprime: gcd_u64(b, p - 1) == 1,
        primitive: is_primitive_root(value, p),
    })
}

/// Result of sweeping every `(p, b)` pair up to a bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GpruSweep {
    pub bound: u64,
    pub primes_checked: u64,
    pub pairs_checked: u64,
    /// First `(p, b)` violating the equivalence, if any.
    pub counterexample: Option<GpruWitness>,
}

impl GpruSweep {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Exhaustive sweep over all odd primes `p <= bound` and all `b in [0, p-1)`,
/// stopping at the first counterexample.
pub fn gpru_sweep(bound: u64, table: &SieveTable) -> Result<GpruSweep, Error> {
    if bound > table.limit() {
        return Err(Error::Bounds(format!(
            "sweep bound {} beyond sieve limit {}",
            bound,
            table.limit()
        )));
    }
    let mut primes_checked = 0u64;
    let mut pairs_checked = 0u64;
    for p in table.primes() {
        if p > bound {
            break;
        }
        if p == 2 {
            continue;
        }
        primes_checked += 1;
        let divisors: Vec<u64> = crate::primes::factorize(p - 1)?
            .distinct_primes()
            .collect();
        let zeta = smallest_primitive_root(p);
        let mut value = 1u64;
        for b in 0..p - 1 {
            let coprime = gcd_u64(b, p - 1) == 1;
            let primitive = crate::modular::is_primitive_root_with(value, p, &divisors);
            pairs_checked += 1;
            if coprime != primitive {
                return Ok(GpruSweep {
                    bound,
                    primes_checked,
                    pairs_checked,
                    counterexample: Some(GpruWitness { p, zeta, b, value, coprime, primitive }),
                });
            }
            value = crate::primes::mul_mod(value, zeta, p);
        }
    }
    Ok(GpruSweep { bound, primes_checked, pairs_checked, counterexample: None })
}

/// `zeta_p^((p-1)/2) = -1 (mod p)` for an odd prime p.
pub fn eta_nu_check(p: u64) -> Result<bool, Error> {
    if p < 3 || !is_prime_u64(p) {
        return Err(Error::Domain(format!("{} is not an odd prime", p)));
    }
    let zeta = smallest_primitive_root(p);
    Ok(pow_mod(zeta, (p - 1) / 2, p)? == p - 1)
}

/// `zeta_p^((p-1)/4)`, a square root of -1 for p = 1 (mod 4).
pub fn sqrt_minus_one(p: u64) -> Result<Residue, Error> {
    if !is_prime_u64(p) || p % 4 != 1 {
        return Err(Error::Domain(format!("{} is not a prime = 1 (mod 4)", p)));
    }
    let zeta = smallest_primitive_root(p);
    let r = pow_mod(zeta, (p - 1) / 4, p)?;
    debug_assert_eq!(crate::primes::mul_mod(r, r, p), p - 1);
    Ok(Residue { value: r, modulus: p })
}

/// Sophie Germain scan: primes p with (p-1)/2 prime, optionally restricted to
/// p = 3 (mod 8). Returns the density report and the (p, (p-1)/2) pairs.
pub fn sophie_germain_scan(
    n: u64,
    require_3_mod_8: bool,
    checkpoints: &[u64],
    table: &SieveTable,
) -> Result<(DensityReport, Vec<(u64, u64)>), Error> {
    let mut specs = vec![ConstraintSpec::sophie_germain()];
    if require_3_mod_8 {
        specs.push(ConstraintSpec::congruence(3, 8)?);
    }
    let mut pairs = Vec::new();
    let report = scan_impl(&specs, n, checkpoints, table, |p| pairs.push((p, (p - 1) / 2)))?;
    Ok((report, pairs))
}

/// Primitive-root scan for the base m: counts primes (not dividing m) with m
/// a primitive root. m must not be 0, ±1, or a perfect square. Returns the
/// report and the member primes.
pub fn artin_scan(
    m: i64,
    n: u64,
    checkpoints: &[u64],
    table: &SieveTable,
) -> Result<(DensityReport, Vec<u64>), Error> {
    let spec = ConstraintSpec::primitive_root_of(m)?;
    let mut members = Vec::new();
    let report = scan_impl(&[spec], n, checkpoints, table, |p| members.push(p))?;
    Ok((report, members))
}

/// One cycle type's worth of the Dedekind comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DedekindRow {
    pub cycle_type: String,
    pub observed: u64,
    pub empirical: f64,
    pub predicted: f64,
}

/// Factor-type statistics of f mod p against the model's class distribution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DedekindReport {
    pub bound: u64,
    pub unramified_count: u64,
    pub excluded_count: u64,
    pub rows: Vec<DedekindRow>,
    /// Max absolute difference between empirical and predicted frequencies.
    pub linf: f64,
}

/// Tally factorization types of f over all unramified primes up to n and pair
/// them with the model's predicted distribution.
pub fn dedekind_compare(
    f: &IntPoly,
    model: &GroupModel,
    n: u64,
    table: &SieveTable,
) -> Result<DedekindReport, Error> {
    let deg = f.degree().unwrap_or(0);
    if deg == 0 || deg != model.degree() as usize {
        return Err(Error::Domain(format!(
            "polynomial degree {} does not match model degree {}",
            deg,
            model.degree()
        )));
    }
    if n > table.limit() {
        return Err(Error::Bounds(format!(
            "bound {} beyond sieve limit {}",
            n,
            table.limit()
        )));
    }
    let disc = discriminant(f)?;
    if disc.is_zero() {
        return Err(Error::Domain("polynomial has repeated roots".into()));
    }
    let bad = BadSet::from_bigint(disc * f.leading_coefficient().unwrap());
    let predicted = predicted_factor_distribution(model)?;

    let mut tally: BTreeMap<CycleType, u64> = BTreeMap::new();
    let mut unramified = 0u64;
    let mut excluded = 0u64;
    for p in table.primes() {
        if p > n {
            break;
        }
        if bad.excludes(p) {
            excluded += 1;
            continue;
        }
        unramified += 1;
        let ft = factor_type_mod_p(f, p)?;
        debug_assert!(ft.squarefree_mod_p);
        *tally.entry(CycleType::new(ft.degrees.clone())).or_insert(0) += 1;
    }

    let mut keys: Vec<CycleType> = predicted.keys().cloned().collect();
    for t in tally.keys() {
        if !predicted.contains_key(t) {
            keys.push(t.clone());
        }
    }
    keys.sort();

    let mut rows = Vec::with_capacity(keys.len());
    let mut linf = BigRational::zero();
    for t in keys {
        let observed = tally.get(&t).copied().unwrap_or(0);
        let emp = if unramified == 0 {
            BigRational::zero()
        } else {
            BigRational::new(BigInt::from(observed), BigInt::from(unramified))
        };
        let pred = predicted.get(&t).cloned().unwrap_or_else(BigRational::zero);
        let dev = (&emp - &pred).abs();
        if dev > linf {
            linf = dev;
        }
        rows.push(DedekindRow {
            cycle_type: t.to_string(),
            observed,
            empirical: emp.to_f64().unwrap_or(0.0),
            predicted: pred.to_f64().unwrap_or(0.0),
        });
    }
    Ok(DedekindReport {
        bound: n,
        unramified_count: unramified,
        excluded_count: excluded,
        rows,
        linf: linf.to_f64().unwrap_or(f64::NAN),
    })
}

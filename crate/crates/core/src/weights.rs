//! Highest-weight bookkeeping for type C_l at p = 2: Steinberg tensor
//! decomposition, the type-C splitting, the dimension table, construction
//! plans realizing each 2-restricted irreducible from the natural module,
//! a caching executor, and the closed-form block-size predictors.
//!
//! Construction strategy: L(ϖ₁) is the natural module; L(ϖᵢ) is the unique
//! composition factor of its tabulated dimension in ∧ⁱ(natural);
//! L(ϖᵢ+ϖⱼ) likewise inside L(ϖᵢ)⊗L(ϖⱼ), and triples inside
//! L(ϖᵢ)⊗L(ϖⱼ+ϖ_k) with i < j < k.  At p = 2 in type C, a weight with
//! a_l = 1 splits off the last fundamental as a tensor factor without any
//! chop.  Non-restricted weights reduce to restricted ones by base-2
//! digits of the coefficients; on GF(2) matrices the Frobenius twist fixes
//! entries, so twisted factors reuse the untwisted images.

use crate::error::Error;
use crate::gf::FieldMatrix;
use crate::jordan::{jordan_type, JordanType};
use crate::meataxe::{find_factor_of_dim, MeataxeConfig};
use crate::rep::{GroupWord, MatRep};
use crate::seeding::{mix_seed, salt_from_str};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

/// A dominant weight Σ aᵢϖᵢ in fundamental-weight coordinates
/// (Bourbaki order, index 1 through the rank).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight {
    coeffs: Vec<u32>,
}

impl Weight {
    pub fn new(coeffs: Vec<u32>) -> Self {
        assert!(!coeffs.is_empty(), "weights need a positive rank");
        Weight { coeffs }
    }

    pub fn zero(rank: usize) -> Self {
        Weight::new(vec![0; rank])
    }

    /// ϖᵢ, 1-indexed.
    pub fn fundamental(rank: usize, i: usize) -> Self {
        assert!((1..=rank).contains(&i), "fundamental index out of range");
        let mut coeffs = vec![0; rank];
        coeffs[i - 1] = 1;
        Weight::new(coeffs)
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&a| a == 0)
    }

    /// All coefficients below p.
    pub fn is_restricted(&self, p: u32) -> bool {
        self.coeffs.iter().all(|&a| a < p)
    }

    /// 1-indexed positions with nonzero coefficient, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &a)| a != 0)
            .map(|(idx, _)| idx + 1)
            .collect()
    }
}

impl fmt::Display for Weight {
    /// Digit string like `01010` when every coefficient is a single digit,
    /// comma-separated coefficients otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.iter().all(|&a| a < 10) {
            for a in &self.coeffs {
                write!(f, "{a}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.coeffs.iter().map(u32::to_string).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = |why: &str| Error::Parse(format!("weight '{s}': {why}"));
        if s.is_empty() {
            return Err(bad("empty"));
        }
        let coeffs = if s.contains(',') {
            s.split(',')
                .map(|part| part.trim().parse::<u32>().map_err(|e| bad(&e.to_string())))
                .collect::<Result<Vec<_>, _>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).ok_or_else(|| bad("expected digits 0-9")))
                .collect::<Result<Vec<_>, _>>()?
        };
        Ok(Weight::new(coeffs))
    }
}

/// λ = Σ pⁱ λᵢ with each λᵢ p-restricted, as (λᵢ, i) pairs with ascending
/// twist exponent; the zero weight yields a single untwisted zero part.
pub fn steinberg_decompose(lambda: &Weight, p: u32) -> Vec<(Weight, u32)> {
    assert!(p >= 2, "need a prime base");
    let rank = lambda.rank();
    let mut parts: Vec<(Weight, u32)> = Vec::new();
    let mut rem: Vec<u32> = lambda.coeffs().to_vec();
    let mut twist = 0;
    while rem.iter().any(|&a| a != 0) {
        let digit: Vec<u32> = rem.iter().map(|&a| a % p).collect();
        let part = Weight::new(digit);
        if !part.is_zero() {
            parts.push((part, twist));
        }
        for a in rem.iter_mut() {
            *a /= p;
        }
        twist += 1;
    }
    if parts.is_empty() {
        parts.push((Weight::zero(rank), 0));
    }
    parts
}

/// The p = 2 type-C splitting of a 2-restricted weight: (λ − a_l ϖ_l, a_l ϖ_l).
/// The corresponding irreducible is the tensor product of the two parts'.
pub fn type_c_split(lambda: &Weight) -> Result<(Weight, Weight), Error> {
    if !lambda.is_restricted(2) {
        return Err(Error::NoPlan(
            lambda.to_string(),
            "the type-C splitting applies to 2-restricted weights".into(),
        ));
    }
    let l = lambda.rank();
    let mut head = lambda.coeffs().to_vec();
    let a_l = head[l - 1];
    head[l - 1] = 0;
    let mut tail = vec![0; l];
    tail[l - 1] = a_l;
    Ok((Weight::new(head), Weight::new(tail)))
}

/// Dimensions (and tilting marks, where established) of the 2-restricted
/// irreducibles of C_l over GF(2).
#[derive(Clone, Debug)]
pub struct DimensionTable {
    rank: usize,
    entries: BTreeMap<Weight, (usize, Option<bool>)>,
}

/// Rank-5 data: dimension of L(λ) and whether L(λ) is a tilting module.
const RANK5_DATA: &[(&str, usize, bool)] = &[
    ("00000", 1, true),
    ("10000", 10, true),
    ("01000", 44, true),
    ("00100", 100, false),
    ("00010", 164, false),
    ("00001", 32, false),
    ("11000", 320, true),
    ("10100", 670, false),
    ("10010", 1408, true),
    ("01100", 2708, false),
    ("01010", 3124, false),
    ("00110", 8832, false),
    ("11100", 17920, true),
    ("11010", 22408, false),
    ("10110", 52710, false),
    ("01110", 183040, true),
    ("11110", 1048576, true),
];

/// Small-rank fixtures, established by chopping the planned constructions.
/// Tilting marks are recorded only where structural (zero weight, natural
/// module, full Steinberg weight).
const RANK2_DATA: &[(&str, usize, Option<bool>)] = &[
    ("00", 1, Some(true)),
    ("10", 4, Some(true)),
    ("01", 4, None),
    ("11", 16, Some(true)),
];
const RANK3_DATA: &[(&str, usize, Option<bool>)] = &[
    ("000", 1, Some(true)),
    ("100", 6, Some(true)),
    ("010", 14, None),
    ("001", 8, None),
    ("110", 64, None),
    ("101", 48, None),
    ("011", 112, None),
    ("111", 512, Some(true)),
];
const RANK4_DATA: &[(&str, usize, Option<bool>)] = &[
    ("0000", 1, Some(true)),
    ("1000", 8, Some(true)),
    ("0100", 26, None),
    ("0010", 48, None),
    ("0001", 16, None),
];

impl DimensionTable {
    /// The table for C_l, 2 ≤ l ≤ 5.  Rank 5 is complete over the
    /// 2-restricted weights of the reproduction; ranks 2–4 carry the
    /// entries their build plans need.
    pub fn for_rank(rank: usize) -> DimensionTable {
        let mut entries = BTreeMap::new();
        match rank {
            2 => {
                for &(s, d, t) in RANK2_DATA {
                    entries.insert(s.parse().unwrap(), (d, t));
                }
            }
            3 => {
                for &(s, d, t) in RANK3_DATA {
                    entries.insert(s.parse().unwrap(), (d, t));
                }
            }
            4 => {
                for &(s, d, t) in RANK4_DATA {
                    entries.insert(s.parse().unwrap(), (d, t));
                }
            }
            5 => {
                for &(s, d, t) in RANK5_DATA {
                    entries.insert(s.parse().unwrap(), (d, Some(t)));
                }
            }
            other => panic!("no dimension table for rank {other}"),
        }
        DimensionTable { rank, entries }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn contains(&self, w: &Weight) -> bool {
        self.entries.contains_key(w)
    }

    /// dim L(λ).
    pub fn dim(&self, w: &Weight) -> Result<usize, Error> {
        self.entries
            .get(w)
            .map(|&(d, _)| d)
            .ok_or_else(|| Error::WeightNotInTable(w.to_string()))
    }

    /// Whether L(λ) is tilting; None when the table does not say.
    pub fn is_tilting(&self, w: &Weight) -> Option<bool> {
        self.entries.get(w).and_then(|&(_, t)| t)
    }

    /// All entries, in weight order.
    pub fn iter(&self) -> impl Iterator<Item = (&Weight, usize, Option<bool>)> {
        self.entries.iter().map(|(w, &(d, t))| (w, d, t))
    }

    /// The nonzero weights in presentation order: by support size, then by
    /// support positions lexicographically.  For rank 5 this reproduces the
    /// published row order exactly.
    pub fn presentation_rows(&self) -> Vec<Weight> {
        let mut rows: Vec<Weight> = self.entries.keys().filter(|w| !w.is_zero()).cloned().collect();
        rows.sort_by_key(|w| (w.support().len(), w.support()));
        rows
    }
}

/// One instruction of a construction plan; sources index earlier steps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlanStep {
    /// The preset's natural module.
    NaturalModule,
    /// ∧ⁱ of an earlier step.
    ExteriorPower { source: usize, i: usize },
    /// Tensor product of two earlier steps.
    Tensor { left: usize, right: usize },
    /// The unique composition factor of the given dimension.
    ChopToDim { source: usize, dim: usize },
}

/// An ordered construction recipe for one irreducible, with the projected
/// dimension of every step (the budget gate works off these projections).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildPlan {
    target: Weight,
    steps: Vec<PlanStep>,
    dims: Vec<usize>,
}

impl BuildPlan {
    pub fn target(&self) -> &Weight {
        &self.target
    }

    pub fn steps(&self) -> &[PlanStep] {
        &self.steps
    }

    /// Projected dimension of each step's output.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Largest intermediate dimension the plan materializes.
    pub fn max_dim(&self) -> usize {
        self.dims.iter().copied().max().unwrap_or(0)
    }

    /// Dimension of the final module.
    pub fn final_dim(&self) -> usize {
        *self.dims.last().expect("plans have at least one step")
    }
}

impl fmt::Display for BuildPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "plan for {} (max intermediate {}):", self.target, self.max_dim())?;
        for (k, step) in self.steps.iter().enumerate() {
            let line = match step {
                PlanStep::NaturalModule => "natural".to_string(),
                PlanStep::ExteriorPower { source, i } => format!("ext^{i}(s{source})"),
                PlanStep::Tensor { left, right } => format!("tensor(s{left}, s{right})"),
                PlanStep::ChopToDim { source, dim } => format!("chop(s{source}, {dim})"),
            };
            writeln!(f, "  s{k} = {line}  [dim {}]", self.dims[k])?;
        }
        Ok(())
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, t| acc * (n - t) / (t + 1))
}

struct PlanBuilder<'t> {
    table: &'t DimensionTable,
    steps: Vec<PlanStep>,
    dims: Vec<usize>,
    natural: Option<usize>,
    memo: HashMap<Weight, usize>,
}

impl<'t> PlanBuilder<'t> {
    fn push(&mut self, step: PlanStep, dim: usize) -> usize {
        self.steps.push(step);
        self.dims.push(dim);
        self.steps.len() - 1
    }

    fn natural(&mut self) -> usize {
        if let Some(k) = self.natural {
            return k;
        }
        let k = self.push(PlanStep::NaturalModule, 2 * self.table.rank());
        self.natural = Some(k);
        k
    }

    fn weight(&mut self, w: &Weight) -> Result<usize, Error> {
        if let Some(&k) = self.memo.get(w) {
            return Ok(k);
        }
        let target_dim = self.table.dim(w)?;
        let support = w.support();
        let k = match support.as_slice() {
            [] => unreachable!("zero weight handled by the caller"),
            [1] => self.natural(),
            [i] => {
                let nat = self.natural();
                let e = self.push(
                    PlanStep::ExteriorPower { source: nat, i: *i },
                    binomial(2 * self.table.rank(), *i),
                );
                self.push(PlanStep::ChopToDim { source: e, dim: target_dim }, target_dim)
            }
            [i, j] => {
                let a = self.weight(&Weight::fundamental(w.rank(), *i))?;
                let b = self.weight(&Weight::fundamental(w.rank(), *j))?;
                let t = self.push(
                    PlanStep::Tensor { left: a, right: b },
                    self.dims[a] * self.dims[b],
                );
                self.push(PlanStep::ChopToDim { source: t, dim: target_dim }, target_dim)
            }
            [i, j, k3] => {
                let a = self.weight(&Weight::fundamental(w.rank(), *i))?;
                let mut pair = Weight::zero(w.rank());
                pair.coeffs[*j - 1] = 1;
                pair.coeffs[*k3 - 1] = 1;
                let b = self.weight(&pair)?;
                let t = self.push(
                    PlanStep::Tensor { left: a, right: b },
                    self.dims[a] * self.dims[b],
                );
                self.push(PlanStep::ChopToDim { source: t, dim: target_dim }, target_dim)
            }
            _ => {
                return Err(Error::NoPlan(
                    w.to_string(),
                    "construction covers supports of size at most 3 before the last fundamental; larger weights are served by the block-size predictors".into(),
                ))
            }
        };
        self.memo.insert(w.clone(), k);
        Ok(k)
    }
}

/// The construction plan for a 2-restricted nonzero weight.
pub fn build_plan(lambda: &Weight, table: &DimensionTable) -> Result<BuildPlan, Error> {
    if lambda.rank() != table.rank() {
        return Err(Error::NoPlan(
            lambda.to_string(),
            format!("weight has rank {}, table has rank {}", lambda.rank(), table.rank()),
        ));
    }
    if lambda.is_zero() {
        return Err(Error::NoPlan(
            lambda.to_string(),
            "the zero weight is the trivial module and needs no construction".into(),
        ));
    }
    let (head, tail) = type_c_split(lambda)?;
    let mut b = PlanBuilder {
        table,
        steps: Vec::new(),
        dims: Vec::new(),
        natural: None,
        memo: HashMap::new(),
    };
    let last = if tail.is_zero() {
        b.weight(&head)?
    } else if head.is_zero() {
        b.weight(&tail)?
    } else {
        let h = b.weight(&head)?;
        let t = b.weight(&tail)?;
        let product = b.dims[h] * b.dims[t];
        assert_eq!(
            product,
            table.dim(lambda)?,
            "type-C split of {lambda} must multiply up to the tabulated dimension"
        );
        b.push(PlanStep::Tensor { left: h, right: t }, product)
    };
    // The plan ends at the step computing the target.
    b.steps.truncate(last + 1);
    b.dims.truncate(last + 1);
    debug_assert_eq!(b.dims[last], table.dim(lambda)?);
    Ok(BuildPlan { target: lambda.clone(), steps: b.steps, dims: b.dims })
}

/// Builds and caches the 2-restricted irreducibles of one preset group and
/// evaluates Jordan types of word images on arbitrary dominant weights.
///
/// Chops are seeded per produced weight, so a module is identical no matter
/// which larger construction first requested it; the cache is write-once
/// per weight and equal recomputation is asserted.
pub struct ModuleBuilder {
    natural: MatRep,
    table: DimensionTable,
    base_seed: u64,
    budget: usize,
    meataxe: MeataxeConfig,
    cache: Mutex<HashMap<Weight, Arc<MatRep>>>,
}

impl ModuleBuilder {
    pub fn new(natural: MatRep, table: DimensionTable, base_seed: u64, budget: usize) -> Self {
        assert_eq!(natural.prime(), 2, "the weight planner works over GF(2)");
        assert_eq!(
            natural.dim(),
            2 * table.rank(),
            "natural module dimension must be twice the rank"
        );
        ModuleBuilder {
            natural,
            table,
            base_seed,
            budget,
            meataxe: MeataxeConfig::default(),
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn table(&self) -> &DimensionTable {
        &self.table
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    fn check_budget(&self, needed: usize) -> Result<(), Error> {
        if needed > self.budget {
            return Err(Error::BudgetExceeded { needed, budget: self.budget });
        }
        Ok(())
    }

    /// The irreducible of a 2-restricted weight (the trivial module for the
    /// zero weight), built per plan and cached.
    pub fn module(&self, lambda: &Weight) -> Result<Arc<MatRep>, Error> {
        if let Some(hit) = self.cache.lock().unwrap().get(lambda) {
            return Ok(hit.clone());
        }
        let built = if lambda.is_zero() {
            MatRep::trivial(2, 1, self.natural.names())
        } else {
            // The plan gates the whole construction, including every
            // sub-build's intermediates, before anything is materialized.
            let plan = build_plan(lambda, &self.table)?;
            self.check_budget(plan.max_dim())?;
            self.construct(lambda)?
        };
        let mut cache = self.cache.lock().unwrap();
        let entry = cache.entry(lambda.clone()).or_insert_with(|| Arc::new(built.clone()));
        assert_eq!(**entry, built, "module cache must be write-once with equal values");
        Ok(entry.clone())
    }

    /// Carries out the plan compositionally, so shared sub-modules come
    /// from the cache and each chop is seeded by the weight it produces
    /// (identical no matter which larger build requests it first).
    fn construct(&self, lambda: &Weight) -> Result<MatRep, Error> {
        let (head, tail) = type_c_split(lambda)?;
        if !head.is_zero() && !tail.is_zero() {
            // The split theorem: the tensor product is already irreducible.
            let h = self.module(&head)?;
            let t = self.module(&tail)?;
            return h.tensor(&t);
        }
        let w = if head.is_zero() { &tail } else { &head };
        match *w.support().as_slice() {
            [1] => Ok(self.natural.clone()),
            [i] => {
                let e = self.natural.exterior_power(i)?;
                self.chop_to(w, &e)
            }
            [i, j] => {
                let a = self.module(&Weight::fundamental(w.rank(), i))?;
                let b = self.module(&Weight::fundamental(w.rank(), j))?;
                let t = a.tensor(&b)?;
                self.chop_to(w, &t)
            }
            [i, j, k] => {
                let mut pair = Weight::zero(w.rank());
                pair.coeffs[j - 1] = 1;
                pair.coeffs[k - 1] = 1;
                let a = self.module(&Weight::fundamental(w.rank(), i))?;
                let b = self.module(&pair)?;
                let t = a.tensor(&b)?;
                self.chop_to(w, &t)
            }
            _ => unreachable!("unplannable supports are rejected by build_plan"),
        }
    }

    fn chop_to(&self, w: &Weight, source: &MatRep) -> Result<MatRep, Error> {
        let dim = self.table.dim(w)?;
        let salt = salt_from_str(&format!("chop:{w}"));
        let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(self.base_seed, salt));
        find_factor_of_dim(source, dim, &mut rng, &self.meataxe)
    }

    /// Jordan type of the word's image on L(λ) for any dominant λ, via the
    /// Steinberg decomposition into 2-restricted factors.  Over GF(2) the
    /// Frobenius twist fixes matrix entries, so twisted factors reuse the
    /// untwisted images.
    pub fn jordan_on_weight(&self, lambda: &Weight, word: &GroupWord) -> Result<JordanType, Error> {
        let parts = steinberg_decompose(lambda, 2);
        let mut projected: usize = 1;
        for (mu, _) in &parts {
            let d = if mu.is_zero() { 1 } else { self.table.dim(mu)? };
            projected = projected.saturating_mul(d);
        }
        self.check_budget(projected)?;
        let mut acc: Option<FieldMatrix> = None;
        for (mu, twist) in &parts {
            let image = self.module(mu)?.evaluate_word(word)?;
            // Structural twist check: x ↦ x² is the identity on GF(2).
            assert!(*twist == 0 || image.prime() == 2);
            acc = Some(match acc {
                None => image,
                Some(prev) => prev.kronecker(&image)?,
            });
        }
        jordan_type(&acc.expect("Steinberg decomposition is never empty"))
    }
}

/// λ = ϖ₁ + ⋯ + ϖ_{l−1}, the largest weight the uniform-block lemma for
/// C_l covers (all fundamentals except the last).
pub fn presteinberg_weight(rank: usize) -> Weight {
    assert!(rank >= 2);
    let mut coeffs = vec![1; rank];
    coeffs[rank - 1] = 0;
    Weight::new(coeffs)
}

/// Uniform block structure on a module where the Steinberg-restriction
/// lemma applies: an element of order q acts with all blocks of size q.
pub fn steinberg_block_predictor(order: u64, dim: usize) -> Result<JordanType, Error> {
    assert!(order >= 1, "element orders are positive");
    if !(dim as u64).is_multiple_of(order) {
        return Err(Error::Divisibility { order, dim });
    }
    Ok(JordanType::uniform(order as usize, dim / order as usize))
}

/// Uniform block structure for λ = ϖ₁+⋯+ϖ_{l−1} in type C_l at p = 2;
/// requires element order 2^k > 2.
pub fn c_l_presteinberg_predictor(order: u64, dim: usize) -> Result<JordanType, Error> {
    if order <= 2 {
        return Err(Error::OrderTooSmall(order));
    }
    assert!(
        order.is_power_of_two(),
        "unipotent orders in characteristic 2 are powers of two"
    );
    steinberg_block_predictor(order, dim)
}

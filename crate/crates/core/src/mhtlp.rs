//! Single-client multi-instance scheme: a chain of puzzles solved
//! sequentially, homomorphic linear combination of all chained solutions,
//! and public verification of both individual solutions and the combination
//! result.
//!
//! Chaining: puzzle `j` hides a master key `mk_j = r_j^(2^T_j) mod N`; the
//! base `r_1` is public and every later base is derived from the previous
//! master key, so recovering `mk_j` is what unlocks work on puzzle `j+1`.
//! Each solution is encoded as the constant term of the line `x + m_j`,
//! evaluated at the public x-coordinates, and each y-coordinate is encrypted
//! as `o = w * (y + z) mod p` with PRF-derived factors seeded by `mk_j`.
//!
//! A linear combination re-encodes the outsourced coordinates through
//! oblivious linear evaluation so the server ends up holding the coordinates
//! of `(x - root) * sum_j q_j (x + m_j)` blinded under a temporary key; the
//! committed secret root is what later proves the combination was formed
//! from the client's coordinates.

use num_bigint::BigUint;
use num_traits::Zero;
use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::commit::{commit_elements, verify_commit_elements, Commitment};
use crate::field::FieldContext;
use crate::ole::{ole_plus, OleFaultPlan, OleOptions, OleReceiverInput, OleSenderInput, OleTranscript};
use crate::poly::{find_roots, interpolate, poly_eval, DensePoly, PointValuePoly};
use crate::prf::{prf, prf_nonzero, Label, PrfKey};
use crate::rsa::{trapdoor_power, RsaKeypair};
use crate::squaring::{sequential_square, CancelToken, SquaringReport};
use crate::{Error, Result};

/// Inter-solution intervals (seconds) and the solver's squaring rate.
///
/// `T_j = maxss * deltas[j]` is the squaring count separating solution `j`
/// from solution `j-1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TimeSchedule {
    pub deltas: Vec<u64>,
    pub maxss: u64,
}

impl TimeSchedule {
    pub fn new(deltas: Vec<u64>, maxss: u64) -> Result<Self> {
        let schedule = Self { deltas, maxss };
        schedule.validate()?;
        Ok(schedule)
    }

    pub fn validate(&self) -> Result<()> {
        if self.deltas.is_empty() {
            return Err(Error::InvalidSchedule("need at least one interval".into()));
        }
        if self.maxss == 0 {
            return Err(Error::InvalidSchedule("maxss must be positive".into()));
        }
        for (j, d) in self.deltas.iter().enumerate() {
            if *d == 0 {
                return Err(Error::InvalidSchedule(format!("interval {} is zero", j + 1)));
            }
            self.maxss
                .checked_mul(*d)
                .ok_or_else(|| Error::InvalidSchedule("squaring count overflows".into()))?;
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.deltas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.deltas.is_empty()
    }

    /// Squaring count for link `j` (0-based).
    pub fn squaring_count(&self, j: usize) -> u64 {
        self.maxss * self.deltas[j]
    }

    /// Squaring count for an evaluation scheduled `delta` seconds out.
    pub fn eval_squaring_count(&self, delta: u64) -> Result<u64> {
        if delta >= self.deltas[0] {
            return Err(Error::InvalidSchedule(
                "evaluation horizon must end before the first solution".into(),
            ));
        }
        Ok(self.maxss * delta)
    }
}

/// The client's secret chain of master keys, one per puzzle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MasterKeyChain {
    #[serde(with = "crate::ser::hex_big_vec")]
    pub mks: Vec<BigUint>,
}

/// The client's published puzzles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PuzzleChain {
    /// `coords[j][i]` is the encrypted i-th y-coordinate of puzzle `j`.
    #[serde(with = "crate::ser::hex_big_vec_vec")]
    pub coords: Vec<Vec<BigUint>>,
    pub commitments: Vec<Commitment>,
    #[serde(with = "crate::ser::hex_big")]
    pub r1: BigUint,
    #[serde(with = "crate::ser::hex_big")]
    pub n: BigUint,
    pub schedule: TimeSchedule,
}

impl PuzzleChain {
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }
}

/// Public half of an evaluation grant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalGrant {
    #[serde(with = "crate::ser::hex_big")]
    pub h: BigUint,
    pub com_prime: Commitment,
    pub y: u64,
}

/// Client-side evaluation secrets, kept for tests and audits.
#[derive(Debug, Clone)]
pub struct EvalSecrets {
    pub tk: BigUint,
    pub root: BigUint,
    pub gamma: Vec<BigUint>,
    pub f_keys: Vec<PrfKey>,
}

impl EvalSecrets {
    /// The zero-sum blinding factors `y[j][i]`; each column sums to zero.
    pub fn zero_sum_factors(&self, z: usize, ctx: &FieldContext) -> Vec<Vec<BigUint>> {
        zero_sum_factors(&self.f_keys, z, ctx)
    }
}

fn zero_sum_factors(f_keys: &[PrfKey], z: usize, ctx: &FieldContext) -> Vec<Vec<BigUint>> {
    let tbar = ctx.tbar();
    let mut rows = Vec::with_capacity(z);
    let mut first = vec![BigUint::zero(); tbar];
    for f in f_keys {
        let row: Vec<BigUint> = (1..=tbar as u64).map(|i| prf(Label::Coord, i, f, ctx)).collect();
        for (acc, v) in first.iter_mut().zip(&row) {
            *acc = ctx.add(acc, v);
        }
        rows.push(row);
    }
    let negated = first.iter().map(|v| ctx.neg(v)).collect();
    let mut out = Vec::with_capacity(z);
    out.push(negated);
    out.extend(rows);
    out
}

/// The server's combined encrypted coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalPuzzle {
    #[serde(with = "crate::ser::hex_big_vec")]
    pub g: Vec<BigUint>,
}

/// Proof element accompanying a published solution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Proof {
    MasterKey {
        #[serde(with = "crate::ser::hex_big")]
        mk: BigUint,
    },
    EvalOpening {
        #[serde(with = "crate::ser::hex_big")]
        root: BigUint,
        #[serde(with = "crate::ser::hex_big")]
        tk: BigUint,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionEntry {
    #[serde(with = "crate::ser::hex_big")]
    pub value: BigUint,
    pub index: usize,
}

/// Recovered plaintext(s) plus the material a verifier needs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionBundle {
    pub solutions: Vec<SolutionEntry>,
    pub proofs: Vec<Proof>,
}

/// Output of a chain solve: one report per solved link.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainSolution {
    pub bundle: SolutionBundle,
    pub reports: Vec<SquaringReport>,
}

impl ChainSolution {
    pub fn total_squarings(&self) -> u64 {
        self.reports.iter().map(|r| r.squarings_performed).sum()
    }
}

/// Everything produced by a linear-combination run.
#[derive(Debug, Clone)]
pub struct EvalOutcome {
    pub puzzle: EvalPuzzle,
    pub grant: EvalGrant,
    pub secrets: EvalSecrets,
    pub transcripts: Vec<OleTranscript>,
}

/// Fault plan for a single oblivious-evaluation instance of an evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalFault {
    pub puzzle: usize,
    pub coord: usize,
    pub fault: OleFaultPlan,
}

/// Derives the two per-puzzle blinding vectors from a master (or temporary)
/// key: additive factors from the first derived key, multiplicative
/// invertible factors from the second.
pub(crate) fn blinding_factors(
    seed: &BigUint,
    ctx: &FieldContext,
) -> Result<(Vec<BigUint>, Vec<BigUint>)> {
    let seed_key = PrfKey::from_element(seed);
    let k = PrfKey::from_element(&prf(Label::Kdf, 1, &seed_key, ctx));
    let s = PrfKey::from_element(&prf(Label::Kdf, 2, &seed_key, ctx));
    let mut zs = Vec::with_capacity(ctx.tbar());
    let mut ws = Vec::with_capacity(ctx.tbar());
    for i in 1..=ctx.tbar() as u64 {
        zs.push(prf(Label::Coord, i, &k, ctx));
        ws.push(prf_nonzero(Label::Coord, i, &s, ctx)?);
    }
    Ok((zs, ws))
}

/// Samples a root that is nonzero and distinct from every public
/// x-coordinate and every entry of `exclude`.
pub(crate) fn sample_root(
    ctx: &FieldContext,
    exclude: &[BigUint],
    rng: &mut impl RngCore,
) -> BigUint {
    loop {
        let candidate = ctx.rand_element(rng);
        if candidate.is_zero() {
            continue;
        }
        if ctx.xs().contains(&candidate) || exclude.contains(&candidate) {
            continue;
        }
        return candidate;
    }
}

/// Generates `z` chained puzzles for `messages`.
pub fn gen_puzzle(
    messages: &[u64],
    keys: &RsaKeypair,
    ctx: &FieldContext,
    schedule: &TimeSchedule,
    rng: &mut impl RngCore,
) -> Result<(PuzzleChain, MasterKeyChain)> {
    schedule.validate()?;
    if messages.len() != schedule.len() {
        return Err(Error::InvalidSchedule(format!(
            "{} messages but {} intervals",
            messages.len(),
            schedule.len()
        )));
    }
    for m in messages {
        if !ctx.in_universe(&BigUint::from(*m)) {
            return Err(Error::MessageOutsideUniverse);
        }
    }

    let r1 = keys.rand_base(rng);
    let mut mks = Vec::with_capacity(messages.len());
    let mut coords = Vec::with_capacity(messages.len());
    let mut commitments = Vec::with_capacity(messages.len());
    for (j, m) in messages.iter().enumerate() {
        let base = if j == 0 {
            r1.clone()
        } else {
            prf(Label::Base, (j + 1) as u64, &PrfKey::from_element(&mks[j - 1]), ctx)
        };
        let mk = trapdoor_power(&ctx_base_to_modulus(&base, keys), schedule.squaring_count(j), keys)?;
        let (zs, ws) = blinding_factors(&mk, ctx)?;
        let message = BigUint::from(*m);
        let mut row = Vec::with_capacity(ctx.tbar());
        for (i, x) in ctx.xs().iter().enumerate() {
            let y = ctx.add(x, &message);
            row.push(ctx.mul(&ws[i], &ctx.add(&y, &zs[i])));
        }
        coords.push(row);
        commitments.push(commit_elements(&message, &mk));
        mks.push(mk);
    }

    Ok((
        PuzzleChain {
            coords,
            commitments,
            r1,
            n: keys.modulus().clone(),
            schedule: schedule.clone(),
        },
        MasterKeyChain { mks },
    ))
}

/// PRF-derived bases live in F_p; reduce mod N before exponentiation. A zero
/// residue is rejected downstream by the exponentiation itself.
fn ctx_base_to_modulus(base: &BigUint, keys: &RsaKeypair) -> BigUint {
    base % keys.modulus()
}

/// Client + server halves of the linear-combination phase.
///
/// The client re-encodes every outsourced coordinate through a verifying
/// oblivious-evaluation session; the server sums the outputs per coordinate.
/// The temporary blinding `z'` enters through the first puzzle's sessions
/// only, so the published sums carry it exactly once, and the zero-sum
/// factors cancel across puzzles.
pub fn evaluate(
    chain: &PuzzleChain,
    coeffs: &[BigUint],
    mks: &MasterKeyChain,
    keys: &RsaKeypair,
    ctx: &FieldContext,
    delta: u64,
    fault: Option<&EvalFault>,
    rng: &mut impl RngCore,
) -> Result<EvalOutcome> {
    let z = chain.len();
    if coeffs.len() != z {
        return Err(Error::CoefficientCountMismatch { got: coeffs.len(), want: z });
    }
    if mks.mks.len() != z || keys.modulus() != &chain.n {
        return Err(Error::MalformedPuzzle("secrets do not match the chain".into()));
    }
    let y_count = chain.schedule.eval_squaring_count(delta)?;

    let h = keys.rand_base(rng);
    let tk = trapdoor_power(&h, y_count, keys)?;
    let (z_primes, w_primes) = blinding_factors(&tk, ctx)?;

    let mut f_keys = Vec::with_capacity(z.saturating_sub(1));
    for _ in 1..z {
        let mut material = vec![0u8; 32];
        rng.fill_bytes(&mut material);
        f_keys.push(PrfKey::from_bytes(material));
    }
    let ys = zero_sum_factors(&f_keys, z, ctx);

    let root = sample_root(ctx, &[], rng);
    let gamma: Vec<BigUint> = ctx.xs().iter().map(|x| ctx.sub(x, &root)).collect();
    let com_prime = commit_elements(&root, &tk);

    let mut g = vec![BigUint::zero(); ctx.tbar()];
    let mut transcripts = Vec::with_capacity(z * ctx.tbar());
    for j in 0..z {
        let (zs, ws) = blinding_factors(&mks.mks[j], ctx)?;
        for i in 0..ctx.tbar() {
            let scale = ctx.mul(&ctx.mul(&gamma[i], &coeffs[j]), &w_primes[i]);
            let e = ctx.mul(&scale, &ctx.inv(&ws[i]));
            let mut e_prime = ctx.neg(&ctx.mul(&scale, &zs[i]));
            if j == 0 {
                e_prime = ctx.add(&e_prime, &z_primes[i]);
            }
            e_prime = ctx.add(&e_prime, &ys[j][i]);

            let opts = OleOptions {
                fault: fault
                    .filter(|f| f.puzzle == j && f.coord == i)
                    .map(|f| f.fault.clone()),
                verifying: true,
            };
            let (d, transcript) = ole_plus(
                &OleSenderInput { a: e, b: e_prime },
                &OleReceiverInput { c: chain.coords[j][i].clone() },
                ctx,
                &opts,
                rng,
            )?;
            g[i] = ctx.add(&g[i], &d);
            transcripts.push(transcript);
        }
    }

    Ok(EvalOutcome {
        puzzle: EvalPuzzle { g },
        grant: EvalGrant { h, com_prime, y: y_count },
        secrets: EvalSecrets { tk, root, gamma, f_keys },
        transcripts,
    })
}

/// Strips the temporary blinding from the combined coordinates and
/// interpolates the combination polynomial.
fn unblind_combination(
    g: &[BigUint],
    tk: &BigUint,
    ctx: &FieldContext,
) -> Result<DensePoly> {
    let (z_primes, w_primes) = blinding_factors(tk, ctx)?;
    let mut points = Vec::with_capacity(ctx.tbar());
    for (i, x) in ctx.xs().iter().enumerate() {
        let theta = ctx.mul(&ctx.inv(&w_primes[i]), &ctx.sub(&g[i], &z_primes[i]));
        points.push((x.clone(), theta));
    }
    interpolate(&PointValuePoly { points }, ctx)
}

/// Solves the combination puzzle: recovers the temporary key by `Y`
/// squarings, decodes the polynomial, extracts the combination and proves it
/// with the committed root.
pub fn solve_evaluation(
    puzzle: &EvalPuzzle,
    grant: &EvalGrant,
    modulus: &BigUint,
    ctx: &FieldContext,
    cancel: &CancelToken,
) -> Result<(SolutionBundle, SquaringReport)> {
    if puzzle.g.len() != ctx.tbar() {
        return Err(Error::MalformedPuzzle(format!(
            "expected {} coordinates, got {}",
            ctx.tbar(),
            puzzle.g.len()
        )));
    }
    let report = sequential_square(&grant.h, grant.y, modulus, cancel)?;
    let tk = report.result.clone();
    let theta = unblind_combination(&puzzle.g, &tk, ctx)?;

    let got = theta.degree().map(|d| d as i64).unwrap_or(-1);
    if got != 2 {
        return Err(Error::DegreeMismatch { got, want: 2 });
    }
    let roots = find_roots(&theta, ctx)?;
    let root = roots
        .into_iter()
        .find(|r| verify_commit_elements(&grant.com_prime, r, &tk))
        .ok_or(Error::RootMismatch)?;

    let cons = theta.constant_term();
    let m = ctx.mul(&cons, &ctx.inv(&ctx.neg(&root)));
    Ok((
        SolutionBundle {
            solutions: vec![SolutionEntry { value: m, index: 0 }],
            proofs: vec![Proof::EvalOpening { root, tk }],
        },
        report,
    ))
}

/// Solves the whole chain sequentially; link `j` costs exactly `T_j`
/// squarings because its base comes out of link `j-1`.
pub fn solve_chain(
    chain: &PuzzleChain,
    ctx: &FieldContext,
    cancel: &CancelToken,
) -> Result<ChainSolution> {
    let z = chain.len();
    let mut solutions = Vec::with_capacity(z);
    let mut proofs = Vec::with_capacity(z);
    let mut reports = Vec::with_capacity(z);
    let mut prev_mk: Option<BigUint> = None;

    for j in 0..z {
        let base = match &prev_mk {
            None => chain.r1.clone(),
            Some(mk) => {
                let raw = prf(Label::Base, (j + 1) as u64, &PrfKey::from_element(mk), ctx);
                raw % &chain.n
            }
        };
        let run = sequential_square(&base, chain.schedule.squaring_count(j), &chain.n, cancel);
        let report = match run {
            Ok(r) => r,
            Err(Error::Cancelled { .. }) => {
                return Err(Error::ChainCancelled {
                    solved: j,
                    total: z,
                    partial: Box::new(ChainSolution {
                        bundle: SolutionBundle { solutions, proofs },
                        reports,
                    }),
                });
            }
            Err(e) => return Err(e),
        };
        let mk = report.result.clone();
        reports.push(report);

        let (zs, ws) = blinding_factors(&mk, ctx)?;
        let mut points = Vec::with_capacity(ctx.tbar());
        for (i, x) in ctx.xs().iter().enumerate() {
            let y = ctx.sub(&ctx.mul(&ctx.inv(&ws[i]), &chain.coords[j][i]), &zs[i]);
            points.push((x.clone(), y));
        }
        let line = interpolate(&PointValuePoly { points }, ctx)?;
        solutions.push(SolutionEntry { value: line.constant_term(), index: j });
        proofs.push(Proof::MasterKey { mk: mk.clone() });
        prev_mk = Some(mk);
    }

    Ok(ChainSolution { bundle: SolutionBundle { solutions, proofs }, reports })
}

/// Verifies a combination result against the published grant.
pub fn verify_evaluation(
    m: &BigUint,
    root: &BigUint,
    tk: &BigUint,
    puzzle: &EvalPuzzle,
    grant: &EvalGrant,
    ctx: &FieldContext,
) -> bool {
    if puzzle.g.len() != ctx.tbar() || root.is_zero() {
        return false;
    }
    if !verify_commit_elements(&grant.com_prime, root, tk) {
        return false;
    }
    let Ok(theta) = unblind_combination(&puzzle.g, tk, ctx) else {
        return false;
    };
    if !poly_eval(&theta, root, ctx).is_zero() {
        return false;
    }
    let t = theta.constant_term();
    let res = ctx.mul(&ctx.neg(&t), &ctx.inv(root));
    res == *m
}

/// Verifies one chained solution against its commitment.
pub fn verify_client_solution(m: &BigUint, mk: &BigUint, com: &Commitment) -> bool {
    verify_commit_elements(com, m, mk)
}

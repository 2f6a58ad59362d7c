//! Seeded random instances for the theorem checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::endo::Endomorphism;
use crate::json::rose_of;
use crate::error::InvariantError;
use crate::nielsen::{analyze, Analysis, PipelineOptions};
use crate::word::{words_up_to, Basis, Letter, Word};

pub const SEED_VAR: &str = "NIELSENKIT_SEED";
pub const DEFAULT_SEED: u64 = 20_240_917;

/// `NIELSENKIT_SEED` if set and numeric, else the default.
pub fn seed_from_env() -> u64 {
    std::env::var(SEED_VAR).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_SEED)
}

fn random_word(rng: &mut ChaCha8Rng, rank: usize, len: usize) -> Word {
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    while letters.len() < len {
        let l = Letter::new(rng.gen_range(0..rank), rng.gen_bool(0.5));
        if letters.last() != Some(&l.inverse()) {
            letters.push(l);
        }
    }
    Word::reduce(letters)
}

/// Injective endomorphisms of `F(a, b)` with image lengths in `1..=max_len`.
pub fn random_endomorphisms(seed: u64, count: usize, max_len: usize) -> Vec<Endomorphism> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let basis = Basis::alphabetic(2);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let images = (0..2).map(|_| {
            let len = rng.gen_range(1..=max_len);
            random_word(&mut rng, 2, len)
        });
        let phi = Endomorphism::new(basis.clone(), images.collect()).expect("images use the basis");
        if phi.is_injective() {
            out.push(phi);
        }
    }
    out
}

/// Options used for random instances: the brute-force partition check is
/// shortened to keep hundreds of instances cheap.
pub fn random_pipeline_options() -> PipelineOptions {
    PipelineOptions { brute_len: 6, ..PipelineOptions::default() }
}

/// Elementary automorphisms `a ↦ ab`, `a ↦ ba`, `b ↦ ba`, `b ↦ ab` and their
/// inverses, as `(θ, θ⁻¹)` pairs.
fn elementary_automorphisms() -> Vec<(Endomorphism, Endomorphism)> {
    let basis = Basis::alphabetic(2);
    let e = |a: &str, b: &str| Endomorphism::parse(basis.clone(), &[a, b]).expect("valid images");
    let pairs = [(("ab", "b"), ("aB", "b")), (("ba", "b"), ("Ba", "b")), (("a", "ba"), ("a", "Ab")), (("a", "ab"), ("a", "bA"))];
    let mut out = Vec::new();
    for ((x, y), (xi, yi)) in pairs {
        out.push((e(x, y), e(xi, yi)));
        out.push((e(xi, yi), e(x, y)));
    }
    out
}

/// `φ` first, then maps with the same fixed point theory: inner twists
/// `i_c ∘ φ` with `|c| ≤ 2` (freely homotopic on the rose) and conjugates
/// `θ ∘ φ ∘ θ⁻¹` by elementary automorphisms.
pub fn representatives(phi: &Endomorphism) -> Vec<Endomorphism> {
    let mut out = vec![phi.clone()];
    for c in words_up_to(phi.rank(), 2).into_iter().filter(|c| !c.is_identity()) {
        out.push(phi.inner_twist(&c));
    }
    if phi.rank() == 2 {
        for (t, ti) in elementary_automorphisms() {
            if let Ok(psi) = phi.compose(&ti).and_then(|x| t.compose(&x)) {
                out.push(psi);
            }
        }
    }
    out
}

/// The first representative whose analysis is fully verified, with its index in
/// [`representatives`].
pub fn verified_representative(
    phi: &Endomorphism,
    opts: &PipelineOptions,
) -> Result<Option<(usize, Endomorphism, Analysis)>, InvariantError> {
    for (i, psi) in representatives(phi).into_iter().enumerate() {
        let a = analyze(&rose_of(&psi), None, opts)?;
        if a.verified() {
            return Ok(Some((i, psi, a)));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct PropsReport {
    pub seed: u64,
    pub instances: usize,
    /// Instances whose filtration did not classify, or whose recursion is unverified.
    pub skipped: usize,
    /// Instances whose own rose map failed and another representative was used.
    pub rerouted: usize,
    pub violations: Vec<String>,
}

impl PropsReport {
    pub fn skip_rate(&self) -> f64 {
        self.skipped as f64 / self.instances.max(1) as f64
    }
}

/// The four class-level statements checked on one verified analysis.
pub fn check_instance(phi: &Endomorphism, a: &Analysis) -> Vec<String> {
    let mut out = Vec::new();
    let tag = phi.format_images();
    for c in &a.classes {
        let (rk, aa) = (c.rk.unwrap(), c.a.unwrap());
        let ichr = 1 - rk - aa;
        if c.ind > ichr {
            out.push(format!("{tag}: ind {} > ichr {ichr}", c.ind));
        }
        if a.chi == -1 && c.ind != 0 && c.ind != ichr {
            out.push(format!("{tag}: essential class with ind {} != ichr {ichr}", c.ind));
        }
    }
    let lefschetz = 1 - phi.trace();
    if a.index_sum() != lefschetz {
        out.push(format!("{tag}: sum ind {} != 1 - tr = {lefschetz}", a.index_sum()));
    }
    let halves: i64 = a.classes.iter().map(|c| (2 * c.rk.unwrap() + c.a.unwrap() - 2).max(0)).sum();
    if halves > -2 * a.chi {
        out.push(format!("{tag}: sum bound {halves}/2 > {}", -a.chi));
    }
    out
}

pub fn run_props(seed: u64, count: usize) -> PropsReport {
    let opts = random_pipeline_options();
    let mut report = PropsReport { seed, instances: count, ..PropsReport::default() };
    for phi in random_endomorphisms(seed, count, 4) {
        match verified_representative(&phi, &opts) {
            Ok(Some((i, psi, a))) => {
                report.rerouted += usize::from(i > 0);
                report.violations.extend(check_instance(&psi, &a));
            }
            Ok(None) => report.skipped += 1,
            Err(e) => report.violations.push(format!("{}: {e}", phi.format_images())),
        }
    }
    report
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct TraceSide {
    pub instances: usize,
    /// Instances with every class verified.
    pub verified: usize,
    /// Verified instances where the expected class was found.
    pub found: usize,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct TraceReport {
    pub seed: u64,
    /// `tr(φ^ab) < 1`: some class has `rk = a = 0`.
    pub below: TraceSide,
    /// `tr(φ^ab) > 1`: some class has `rk + a > 1`.
    pub above: TraceSide,
}

pub fn run_trace_criterion(seed: u64, per_side: usize) -> TraceReport {
    let opts = random_pipeline_options();
    let mut report = TraceReport { seed, ..TraceReport::default() };
    let mut round = 0u64;
    while report.below.instances < per_side || report.above.instances < per_side {
        for phi in random_endomorphisms(seed.wrapping_add(round), 200, 4) {
            let tr = phi.trace();
            let side = match tr {
                t if t < 1 && report.below.instances < per_side => &mut report.below,
                t if t > 1 && report.above.instances < per_side => &mut report.above,
                _ => continue,
            };
            side.instances += 1;
            match verified_representative(&phi, &opts) {
                Ok(Some((_, _, a))) => {
                    side.verified += 1;
                    let hit = a.classes.iter().any(|c| {
                        let (rk, aa) = (c.rk.unwrap(), c.a.unwrap());
                        if tr < 1 {
                            rk == 0 && aa == 0
                        } else {
                            rk + aa > 1
                        }
                    });
                    if hit {
                        side.found += 1;
                    } else {
                        side.failures.push(phi.format_images());
                    }
                }
                Ok(None) => {}
                Err(e) => side.failures.push(format!("{}: {e}", phi.format_images())),
            }
        }
        round += 1;
    }
    report
}

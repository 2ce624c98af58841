use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use walgebra::brst::{w_character, Brst};
use walgebra::characters;
use walgebra::finite_brst::{finite_cohomology, FiniteBrst};
use walgebra::free_fields::{preset, PRESETS};
use walgebra::jets::{jet_ideal, JetPva, JetRing};
use walgebra::lie::{gl, sl, slice_transversal, verify_kostant_freeness, Form, Kind};
use walgebra::miura::{duality_check, miura_identity, virasoro_certificate};
use walgebra::scalar::{Rat, Scalar};
use walgebra::zhu::{c2_algebra, zhu_algebra_dims, zhu_commutative};

const SCHEMA_VERSION: u32 = 1;
const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Parser)]
#[command(name = "walgebra", version, about = "Exact computations for type-A W-algebras")]
struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum LieKind {
    Sl,
    Gl,
}

#[derive(Clone, Copy, ValueEnum)]
enum Profile {
    Quick,
    Full,
}

#[derive(Subcommand)]
enum Cmd {
    /// Structure constants, Jacobi identity and the Kostant slice.
    Lie {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "sl")]
        kind: LieKind,
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
    /// BRST reduction of the finite algebra: differential and cohomology.
    FiniteBrst {
        #[arg(long)]
        n: usize,
        /// Largest doubled Kazhdan degree.
        #[arg(long, default_value_t = 4)]
        max_degree: i64,
        /// Poisson (classical) complex instead of the quantum one.
        #[arg(long)]
        classical: bool,
    },
    /// Randomized vertex-algebra axiom suite on a preset.
    Vertex {
        #[arg(long, default_value = "complex-sl2")]
        preset: String,
        #[arg(long, default_value_t = 3)]
        weight_cap: i64,
        #[arg(long, default_value_t = 50)]
        trials: usize,
    },
    /// Chiral BRST complex: nilpotency and cohomology of `C₋`.
    Brst {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        weight_max: i64,
    },
    /// Miura images and the central charge.
    Miura {
        #[arg(long)]
        n: usize,
        /// Keep the level as the symbol `k`.
        #[arg(long)]
        symbolic: bool,
        /// Rational level `p/q`, or `k`.
        #[arg(long)]
        level: Option<String>,
    },
    /// Zhu's algebra and the C₂-algebra of a preset.
    Zhu {
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 3)]
        weight_max: i64,
    },
    /// Truncated jet ideal and the jet-PVA axiom check on `sl₂`.
    Jets {
        /// Comma-separated generators, e.g. `x^2,x*y`.
        #[arg(long)]
        ideal: String,
        #[arg(long, default_value_t = 5)]
        order: usize,
        #[arg(long, default_value_t = 0)]
        pva_trials: usize,
    },
    /// Admissible levels, nondegenerate classes and their characters.
    Characters {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
        #[arg(long, default_value_t = 10)]
        order: usize,
        #[arg(long)]
        list_classes: bool,
        #[arg(long, default_value_t = 1000)]
        length_cap: usize,
    },
    /// Run the acceptance checks.
    VerifyAll {
        #[arg(long, value_enum, default_value = "quick")]
        profile: Profile,
    },
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
struct RunReport {
    schema_version: u32,
    subcommand: String,
    parameters: Value,
    seed: u64,
    wall_time_ms: u128,
    certificates: BTreeMap<String, bool>,
    payload: Value,
}

struct Outcome {
    parameters: Value,
    certificates: BTreeMap<String, bool>,
    payload: Value,
}

fn to_json<T: Serialize>(t: &T) -> anyhow::Result<Value> {
    Ok(serde_json::to_value(t)?)
}

fn parse_level(s: &str) -> anyhow::Result<Scalar> {
    Ok(Scalar::parse(s)?)
}

fn run(cmd: &Cmd, seed: u64) -> anyhow::Result<(String, Outcome)> {
    let mut certs = BTreeMap::new();
    let (name, parameters, payload) = match cmd {
        Cmd::Lie { n, kind, samples } => {
            let l = match kind {
                LieKind::Sl => sl(*n),
                LieKind::Gl => gl(*n),
            };
            certs.insert("jacobi".into(), l.check_jacobi());
            let mut payload = json!({ "dim": l.dim(), "basis": l.names });
            if matches!(kind, LieKind::Sl) && *n <= 4 {
                use rand::SeedableRng;
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                let k = verify_kostant_freeness(*n, *samples, &mut rng)?;
                certs.insert("kostant_slice".into(), k.pass);
                certs.insert("slice_transversal".into(), slice_transversal(*n));
                payload["kostant"] = to_json(&k)?;
            }
            ("lie", json!({ "n": n, "kind": if matches!(kind, LieKind::Sl) { "sl" } else { "gl" }, "samples": samples }), payload)
        }
        Cmd::FiniteBrst { n, max_degree, classical } => {
            let fb = FiniteBrst::new(*n, !classical)?;
            certs.insert("q_squared_zero".into(), fb.q_squared_zero());
            let diff = fb.differential_checks(3);
            certs.insert("ad_q_squared_zero".into(), diff.square_zero);
            let h = finite_cohomology(*n, *max_degree, !classical)?;
            certs.insert("h0_matches_invariants".into(), h.h0 == h.expected_h0);
            certs.insert("higher_vanish".into(), h.higher_vanish);
            (
                "finite-brst",
                json!({ "n": n, "max_degree": max_degree, "classical": classical }),
                json!({ "differential": to_json(&diff)?, "cohomology": to_json(&h)? }),
            )
        }
        Cmd::Vertex { preset: p, weight_cap, trials } => {
            let e = preset(p)?;
            let r = e.verify_axioms(*weight_cap, *trials, seed)?;
            certs.insert("axioms".into(), r.pass);
            ("vertex", json!({ "preset": p, "weight_cap": weight_cap, "trials": trials }), to_json(&r)?)
        }
        Cmd::Brst { n, weight_max } => {
            let b = Brst::new(Kind::Sl, *n, &Form::KNormalized)?;
            let t = b.cohomology_dims(*weight_max);
            let oracle = w_character(*n, 2, *weight_max as usize);
            let expect: Vec<Scalar> = (0..=*weight_max as usize).map(|d| oracle.coeff(d).clone()).collect();
            let got: Vec<Scalar> = t.h0().iter().map(|&d| Scalar::int(d as i64)).collect();
            certs.insert("q_lambda_q_zero".into(), b.q_nilpotent());
            certs.insert("q0_squared_zero".into(), t.nilpotent);
            certs.insert("higher_vanish".into(), t.entries.iter().all(|e| e.charge == 0 || e.dim == 0));
            certs.insert("h0_matches_character".into(), got == expect);
            certs.insert("specializations_consistent".into(), t.specializations_consistent);
            ("brst", json!({ "n": n, "weight_max": weight_max }), json!({ "h0": t.h0(), "expected_h0": expect, "table": to_json(&t)? }))
        }
        Cmd::Miura { n, symbolic, level } => {
            let k = match (symbolic, level) {
                (true, _) | (false, None) => Scalar::k(),
                (false, Some(l)) => parse_level(l)?,
            };
            let cert = virasoro_certificate(*n, &k)?;
            certs.insert("central_charge_formula".into(), cert.matches_formula);
            let mut payload = json!({ "central_charge": cert.central_charge, "virasoro_scale": cert.scale });
            let mi = miura_identity(*n, &k)?;
            certs.insert("miura_identity".into(), mi.identity_holds);
            payload["miura"] = to_json(&mi)?;
            if k == Scalar::k() {
                let levels: Vec<Rat> = ["1/2", "1/3", "2", "-5/7", "3/4"].iter().map(|s| s.parse().expect("literal")).collect();
                let d = duality_check(*n, &levels)?;
                certs.insert("level_duality".into(), d.iter().all(|r| r.equal));
                payload["duality"] = to_json(&d)?;
            }
            ("miura", json!({ "n": n, "level": k }), payload)
        }
        Cmd::Zhu { algebra, weight_max } => {
            if !PRESETS.contains(&algebra.as_str()) {
                anyhow::bail!("unknown algebra '{algebra}'; choose one of {}", PRESETS.join(", "));
            }
            let e = preset(algebra)?;
            let z = zhu_algebra_dims(&e, *weight_max)?;
            let c2 = c2_algebra(&e, *weight_max)?;
            certs.insert("stable".into(), z.stable);
            certs.insert("eta_surjective".into(), z.eta_surjective);
            certs.insert("specializations_consistent".into(), z.specializations_consistent);
            let mut payload = json!({ "zhu": to_json(&z)?, "c2": to_json(&c2)? });
            if algebra == "w-sl2" || algebra == "virasoro" {
                let c = zhu_commutative(&e, *weight_max)?;
                certs.insert("commutative".into(), c.pass);
                payload["commutative"] = to_json(&c)?;
            }
            ("zhu", json!({ "algebra": algebra, "weight_max": weight_max }), payload)
        }
        Cmd::Jets { ideal, order, pva_trials } => {
            let mut r = JetRing::new(&[]);
            let gens = ideal.split(',').map(|s| r.parse(s)).collect::<Result<Vec<_>, _>>()?;
            let gens: Vec<_> = gens.iter().map(|f| walgebra::jets::base_to_jets(&r, f)).collect();
            let t = jet_ideal(&r, &gens, *order)?;
            certs.insert("weights".into(), t.weights_ok);
            let mut payload = to_json(&t)?;
            if *pva_trials > 0 {
                let pva = JetPva::kirillov_kostant(&sl(2));
                let rep = pva.verify_axioms(3, *pva_trials, seed);
                certs.insert("pva_axioms".into(), rep.pass);
                payload["pva"] = to_json(&rep)?;
            }
            ("jets", json!({ "ideal": ideal, "order": order, "pva_trials": pva_trials }), payload)
        }
        Cmd::Characters { n, p, q, order, list_classes, length_cap } => {
            let k = Rat::new((*p).into(), (*q).into()) - Rat::from_integer((*n as i64).into());
            let level = characters::is_admissible_level(*n, &k);
            let mut payload = json!({ "level": k.to_string(), "class": level });
            let orbit = characters::orbit_partition(*n, *q as usize)?;
            payload["orbit_partition"] = to_json(&orbit)?;
            if level == characters::LevelClass::Nondegenerate {
                let classes = characters::nondegenerate_classes(*n, *p, *q)?;
                if *list_classes {
                    payload["classes"] = to_json(&classes)?;
                }
                let chars = characters::class_characters(*n, *p, *q, *order, *length_cap)?;
                certs.insert("nonnegative_integral".into(), chars.iter().all(|c| c.nonnegative_integral));
                payload["class_count"] = json!(classes.count);
                payload["action_free"] = json!(classes.action_free);
                payload["characters"] = to_json(&chars)?;
            }
            if (*p, *q) == (*n as i64, *n as i64 + 1) {
                let d = characters::denominator_identity(*n, *order)?;
                certs.insert("denominator_identity".into(), d.matches_infinite_product);
                payload["denominator"] = to_json(&d)?;
            }
            ("characters", json!({ "n": n, "p": p, "q": q, "order": order, "length_cap": length_cap }), payload)
        }
        Cmd::VerifyAll { profile } => {
            let full = matches!(profile, Profile::Full);
            let mut rows = Vec::new();
            let mut check = |name: &str, ok: anyhow::Result<bool>| {
                let pass = matches!(ok, Ok(true));
                rows.push(json!({ "name": name, "pass": pass, "error": ok.err().map(|e| e.to_string()) }));
                certs.insert(name.to_string(), pass);
            };
            let k = Scalar::k();
            check("central_charge_sl2", virasoro_certificate(2, &k).map(|c| c.matches_formula).map_err(Into::into));
            check("central_charge_sl3", virasoro_certificate(3, &k).map(|c| c.matches_formula).map_err(Into::into));
            let caps: &[(usize, i64)] = if full { &[(2, 6), (3, 4)] } else { &[(2, 4), (3, 3)] };
            for &(n, cap) in caps {
                check(
                    &format!("brst_sl{n}"),
                    (|| {
                        let b = Brst::new(Kind::Sl, n, &Form::KNormalized)?;
                        let t = b.cohomology_dims(cap);
                        let oracle = w_character(n, 2, cap as usize);
                        let h0 = t.h0().iter().enumerate().all(|(d, &x)| Scalar::int(x as i64) == *oracle.coeff(d));
                        Ok(b.q_nilpotent() && t.nilpotent && h0 && t.entries.iter().all(|e| e.charge == 0 || e.dim == 0))
                    })(),
                );
            }
            for n in 2..=if full { 4 } else { 3 } {
                check(&format!("miura_identity_{n}"), miura_identity(n, &k).map(|r| r.identity_holds).map_err(Into::into));
            }
            let trials = if full { 200 } else { 20 };
            check(
                "vertex_axioms",
                preset("complex-sl2").and_then(|e| e.verify_axioms(if full { 4 } else { 3 }, trials, seed)).map(|r| r.pass).map_err(Into::into),
            );
            check("finite_brst_gl2", finite_cohomology(2, 4, true).map(|h| h.pass).map_err(Into::into));
            check("zhu_affine_sl2", preset("affine-sl2").and_then(|e| zhu_algebra_dims(&e, 3)).map(|z| z.graded_step1 == [1, 3, 6, 10]).map_err(Into::into));
            check("jet_pva", Ok(JetPva::kirillov_kostant(&sl(2)).verify_axioms(3, if full { 100 } else { 20 }, seed).pass));
            check("denominator_identity", characters::denominator_identity(2, 20).map(|d| d.matches_infinite_product).map_err(Into::into));
            check("ising_classes", characters::nondegenerate_classes(2, 3, 4).map(|c| c.count == 3).map_err(Into::into));
            check("orbit_partitions", characters::orbit_table(8, 8, 4).map(|r| r.iter().all(|x| x.ok)).map_err(Into::into));
            ("verify-all", json!({ "profile": if full { "full" } else { "quick" } }), json!({ "checks": rows }))
        }
    };
    Ok((name.to_string(), Outcome { parameters, certificates: certs, payload }))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    let (name, outcome) = match run(&cli.cmd, cli.seed) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let report = RunReport {
        schema_version: SCHEMA_VERSION,
        subcommand: name,
        parameters: outcome.parameters,
        seed: cli.seed,
        wall_time_ms: start.elapsed().as_millis(),
        certificates: outcome.certificates,
        payload: outcome.payload,
    };
    let text = serde_json::to_string_pretty(&report).expect("report serializes");
    let written = match &cli.out {
        Some(p) => std::fs::write(p, text + "\n").map_err(|e| e.to_string()),
        None => {
            use std::io::Write;
            // a closed pipe (e.g. `| head`) is not an error
            let _ = writeln!(std::io::stdout(), "{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    if report.certificates.values().all(|&b| b) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

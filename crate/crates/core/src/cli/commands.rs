//! Command implementations: thin wrappers over the library operations that
//! parse files and flags, run, and emit reports.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{
    resolve_out_path, CliError, Command, Report, ReportKind, SchemeArg, VariantArg, EXIT_DETECTED,
    SCHEMA_VERSION,
};
use crate::adversary::{
    epr_attack, posterior_from_view, run_cheat_campaign, CheatConfig, Coalition, Prior,
    TesterLieMode,
};
use crate::bits::{bitstring, parse_bitstring, Bit};
use crate::boolfn::{
    degree2_decomposition, inner_product_decomposition, to_anf, BooleanFunction, FunctionFile,
};
use crate::protocol::{
    run_multiparty, run_scheme_a, run_scheme_b, run_scheme_b_one_sided, run_scheme_c, BVariant,
    MultipartyInner, PartyId, SessionOutcome, SessionResult, TesterPolicy, TwoPartyScheme,
};
use crate::qsim::{ghz_state, MeasurementSetting, PauliOp};

fn load_function(path: &Path) -> Result<BooleanFunction, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::ReadFile {
        path: path.to_path_buf(),
        source,
    })?;
    let file: FunctionFile =
        serde_json::from_str(&text).map_err(|e| CliError::FunctionFile(e.to_string()))?;
    Ok(file.parse()?)
}

/// Parse `alice=10,bob=01` against the function's declared parties.
fn parse_inputs(spec: &str, f: &BooleanFunction) -> Result<Vec<Vec<Bit>>, CliError> {
    let mut by_name: BTreeMap<String, Vec<Bit>> = BTreeMap::new();
    for part in spec.split(',').filter(|p| !p.is_empty()) {
        let (name, bits) = part
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("input {part:?} is not name=bits")))?;
        let bits = parse_bitstring(bits.trim())
            .ok_or_else(|| CliError::Config(format!("input bits {bits:?} are not 0/1")))?;
        by_name.insert(name.trim().to_string(), bits);
    }
    let mut out = Vec::new();
    for party in f.parties() {
        let bits = by_name.remove(&party.name).ok_or_else(|| {
            CliError::Config(format!("missing inputs for party {:?}", party.name))
        })?;
        if bits.len() != party.variables.len() {
            return Err(CliError::Config(format!(
                "party {:?} needs {} input bits, got {}",
                party.name,
                party.variables.len(),
                bits.len()
            )));
        }
        out.push(bits);
    }
    if let Some(extra) = by_name.keys().next() {
        return Err(CliError::Config(format!(
            "unknown party {extra:?} in inputs"
        )));
    }
    Ok(out)
}

fn parse_cheat(spec: &str) -> Result<CheatConfig, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let party =
        |name: &str| -> Result<PartyId, CliError> { name.parse().map_err(CliError::Config) };
    match parts.as_slice() {
        ["none"] => Ok(CheatConfig::None),
        ["flipsum", by] => Ok(CheatConfig::FlipSum { by: party(by)? }),
        ["fakepad", by] => Ok(CheatConfig::FakePad { by: party(by)? }),
        ["testerlie", by, mode] => {
            let mode = match *mode {
                "silent" => TesterLieMode::SilentTester,
                "falseclaim" | "claim" => TesterLieMode::FalseClaim,
                other => {
                    return Err(CliError::Config(format!(
                        "unknown tester-lie mode {other:?} (use silent or falseclaim)"
                    )))
                }
            };
            Ok(CheatConfig::TesterLie {
                by: party(by)?,
                mode,
            })
        }
        _ => Err(CliError::Config(format!(
            "unparseable cheat {spec:?} (e.g. flipsum:bob, fakepad:alice, testerlie:bob:silent)"
        ))),
    }
}

fn parse_coalition(spec: &str) -> Result<BTreeSet<PartyId>, CliError> {
    spec.split(',')
        .filter(|p| !p.is_empty())
        .map(|p| p.trim().parse().map_err(CliError::Config))
        .collect()
}

fn write_report(report: &Report, out: Option<&Path>) -> Result<(), CliError> {
    let rendered = serde_json::to_string_pretty(report).expect("report serializes");
    match out {
        None => {
            println!("{rendered}");
            Ok(())
        }
        Some(path) => {
            let path = resolve_out_path(path);
            if let Some(parent) = path.parent() {
                if !parent.as_os_str().is_empty() {
                    std::fs::create_dir_all(parent).map_err(|source| CliError::WriteFile {
                        path: path.clone(),
                        source,
                    })?;
                }
            }
            std::fs::write(&path, rendered).map_err(|source| CliError::WriteFile {
                path: path.clone(),
                source,
            })
        }
    }
}

fn tester_policy(
    ta: Option<f64>,
    tb: Option<f64>,
    nrep: Option<usize>,
) -> Result<TesterPolicy, CliError> {
    match (ta, tb, nrep) {
        (Some(ta), Some(tb), Some(nrep)) => Ok(TesterPolicy::new(ta, tb, nrep)?),
        _ => Err(CliError::Config(
            "scheme c needs --ta, --tb and --nrep".into(),
        )),
    }
}

fn reject_tester_flags(
    ta: Option<f64>,
    tb: Option<f64>,
    nrep: Option<usize>,
    cheat: &Option<String>,
    scheme: SchemeArg,
) -> Result<(), CliError> {
    if scheme != SchemeArg::C && (ta.is_some() || tb.is_some() || nrep.is_some()) {
        return Err(CliError::Config(format!(
            "--ta/--tb/--nrep only apply to scheme c, not {scheme:?}"
        )));
    }
    if scheme != SchemeArg::C && cheat.is_some() {
        return Err(CliError::Config(
            "--cheat only applies to scheme c (or the epr command)".into(),
        ));
    }
    Ok(())
}

fn variant_of(variant: Option<VariantArg>) -> BVariant {
    match variant {
        Some(VariantArg::Swap) => BVariant::QubitSwap,
        Some(VariantArg::Ensemble) | None => BVariant::Ensemble,
    }
}

fn multiparty_inputs(per_party: &[Vec<Bit>]) -> BTreeMap<PartyId, Vec<Bit>> {
    per_party
        .iter()
        .enumerate()
        .map(|(j, bits)| (PartyId::Party(j + 1), bits.clone()))
        .collect()
}

fn outcome_json(outcome: &SessionOutcome) -> serde_json::Value {
    serde_json::to_value(outcome).expect("outcome serializes")
}

fn echo_inputs(f: &BooleanFunction, inputs: &[Vec<Bit>]) -> serde_json::Value {
    let map: BTreeMap<String, String> = f
        .parties()
        .iter()
        .zip(inputs)
        .map(|(p, bits)| (p.name.clone(), bitstring(bits)))
        .collect();
    json!(map)
}

/// Verify the stabilizer suite exactly and the parity law over sampled
/// measurement triples for every setting pair.
pub fn cmd_ghz_check(samples: usize, seed: u64) -> Result<Report, CliError> {
    if samples == 0 {
        return Err(CliError::Config("--samples must be at least 1".into()));
    }
    let ghz = ghz_state();
    let mut stabilizers = BTreeMap::new();
    for op in ["ZZZ", "ZXX", "XZX", "-XXZ"] {
        let value = ghz
            .expectation(&op.parse::<PauliOp>().expect("valid operator"))
            .expect("valid operator");
        stabilizers.insert(op.to_string(), value);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = BTreeMap::new();
    let mut marginals = BTreeMap::new();
    for (a, b) in [(0u8, 0u8), (0, 1), (1, 0), (1, 1)] {
        let settings = [Bit(a == 1), Bit(b == 1), Bit(a == 1) ^ Bit(b == 1)];
        let expected = Bit(a == 1) & Bit(b == 1);
        let mut bad = 0usize;
        let mut ones = [0usize; 3];
        for _ in 0..samples {
            let mut state = ghz_state();
            let mut parity = Bit::ZERO;
            for (qubit, setting) in settings.iter().enumerate() {
                let (outcome, next) = state
                    .measure_pauli(qubit, MeasurementSetting(*setting).basis(), &mut rng)
                    .expect("valid measurement");
                parity ^= outcome.bit;
                ones[qubit] += outcome.bit.as_u8() as usize;
                state = next;
            }
            if parity != expected {
                bad += 1;
            }
        }
        let key = format!("a{a}b{b}");
        violations.insert(key.clone(), bad);
        marginals.insert(
            key,
            ones.map(|count| count as f64 / samples as f64).to_vec(),
        );
    }

    Ok(Report {
        kind: ReportKind::GhzCheck,
        schema_version: SCHEMA_VERSION,
        seed: Some(seed),
        payload: json!({
            "samples": samples,
            "stabilizers": stabilizers,
            "parity_violations": violations,
            "outcome_one_frequencies": marginals,
        }),
    })
}

/// Emit the normal form, the two-party term list with its length, and the
/// degree-2 classification.
pub fn cmd_decompose(function: &Path) -> Result<Report, CliError> {
    let f = load_function(function)?;
    let anf = to_anf(&f);

    let two_party = if f.party_count() == 2 {
        let d = inner_product_decomposition(&f)?;
        json!({
            "m": d.m(),
            "terms": d
                .terms()
                .iter()
                .map(|(p, q)| json!({"p": p.to_string(), "q": q.to_string()}))
                .collect::<Vec<_>>(),
        })
    } else {
        serde_json::Value::Null
    };

    let degree2 = if f.party_count() >= 3 {
        match degree2_decomposition(&f) {
            Ok(form) => {
                let buckets: BTreeMap<String, Vec<serde_json::Value>> = form
                    .buckets()
                    .iter()
                    .map(|((j1, j2), terms)| {
                        (
                            format!("{},{}", form.party_name(*j1), form.party_name(*j2)),
                            terms
                                .iter()
                                .map(|(a, b)| json!({"p_hi": a.to_string(), "p_lo": b.to_string()}))
                                .collect(),
                        )
                    })
                    .collect();
                json!({"ok": true, "buckets": buckets})
            }
            Err(crate::boolfn::BoolFnError::Degree2Violation { monomial, span }) => {
                json!({"ok": false, "violation": {"monomial": monomial, "span": span}})
            }
            Err(other) => return Err(other.into()),
        }
    } else {
        serde_json::Value::Null
    };

    Ok(Report {
        kind: ReportKind::Decompose,
        schema_version: SCHEMA_VERSION,
        seed: None,
        payload: json!({
            "variables": f.variables(),
            "anf": anf.to_string(),
            "inner_product": two_party,
            "degree2": degree2,
        }),
    })
}

struct RunArgs<'a> {
    function: &'a Path,
    scheme: SchemeArg,
    variant: Option<VariantArg>,
    inputs: &'a str,
    seed: u64,
    ta: Option<f64>,
    tb: Option<f64>,
    nrep: Option<usize>,
    cheat: Option<&'a str>,
}

fn run_session(
    args: &RunArgs,
) -> Result<(BooleanFunction, Vec<Vec<Bit>>, SessionResult), CliError> {
    let f = load_function(args.function)?;
    let inputs = parse_inputs(args.inputs, &f)?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);

    let result = match args.scheme {
        SchemeArg::Multi => {
            if args.tb.is_some() {
                return Err(CliError::Config(
                    "multi uses --ta as the tester probability for every party; --tb does not apply".into(),
                ));
            }
            if args.cheat.is_some() {
                return Err(CliError::Config(
                    "--cheat only applies to scheme c (or the epr command)".into(),
                ));
            }
            let form = degree2_decomposition(&f)?;
            let inner = match (args.ta, args.nrep) {
                (Some(t), Some(n_rep)) => MultipartyInner::C {
                    tester_probs: vec![t; f.party_count()],
                    n_rep,
                },
                (None, None) => MultipartyInner::B,
                _ => {
                    return Err(CliError::Config(
                        "multi with testers needs both --ta and --nrep".into(),
                    ))
                }
            };
            run_multiparty(&form, &multiparty_inputs(&inputs), &mut rng, &inner)?
        }
        scheme => {
            let decomp = inner_product_decomposition(&f)?;
            let (x, y) = (&inputs[0], &inputs[1]);
            match scheme {
                SchemeArg::A => {
                    reject_tester_flags(
                        args.ta,
                        args.tb,
                        args.nrep,
                        &args.cheat.map(String::from),
                        scheme,
                    )?;
                    run_scheme_a(&decomp, x, y, &mut rng)?
                }
                SchemeArg::B => {
                    reject_tester_flags(
                        args.ta,
                        args.tb,
                        args.nrep,
                        &args.cheat.map(String::from),
                        scheme,
                    )?;
                    run_scheme_b(&decomp, x, y, &mut rng, variant_of(args.variant))?
                }
                SchemeArg::B1 => {
                    reject_tester_flags(
                        args.ta,
                        args.tb,
                        args.nrep,
                        &args.cheat.map(String::from),
                        scheme,
                    )?;
                    run_scheme_b_one_sided(&decomp, x, y, &mut rng)?
                }
                SchemeArg::C => {
                    let policy = tester_policy(args.ta, args.tb, args.nrep)?;
                    let cheat = match args.cheat {
                        Some(spec) => parse_cheat(spec)?,
                        None => CheatConfig::None,
                    };
                    run_scheme_c(&decomp, x, y, &mut rng, policy, &cheat)?
                }
                SchemeArg::Multi => unreachable!(),
            }
        }
    };
    Ok((f, inputs, result))
}

/// Execute one session; returns the report and the process exit code
/// (0, or 2 when the session halted with detected cheating).
#[allow(clippy::too_many_arguments)]
pub fn cmd_run(
    function: &Path,
    scheme: SchemeArg,
    variant: Option<VariantArg>,
    inputs: &str,
    seed: u64,
    ta: Option<f64>,
    tb: Option<f64>,
    nrep: Option<usize>,
    cheat: Option<&str>,
    transcript_out: Option<&Path>,
) -> Result<(Report, i32), CliError> {
    let args = RunArgs {
        function,
        scheme,
        variant,
        inputs,
        seed,
        ta,
        tb,
        nrep,
        cheat,
    };
    let (f, inputs, result) = run_session(&args)?;

    if let Some(path) = transcript_out {
        let path = resolve_out_path(path);
        std::fs::write(&path, result.transcript.to_json_lines()).map_err(|source| {
            CliError::WriteFile {
                path: path.clone(),
                source,
            }
        })?;
    }

    let exit = if result.outcome.is_halted() {
        EXIT_DETECTED
    } else {
        0
    };
    let report = Report {
        kind: ReportKind::Run,
        schema_version: SCHEMA_VERSION,
        seed: Some(seed),
        payload: json!({
            "scheme": format!("{scheme:?}").to_lowercase(),
            "inputs": echo_inputs(&f, &inputs),
            "outcome": outcome_json(&result.outcome),
            "output": result.outcome.value().map(|b| b.as_u8()),
            "messages": result.transcript.messages.len(),
            "announcements": result.transcript.announcements.len(),
        }),
    };
    Ok((report, exit))
}

/// All input grid points of a function, in truth-table order.
fn input_grid(f: &BooleanFunction) -> Vec<Vec<Vec<Bit>>> {
    let n = f.n_variables();
    (0..1usize << n)
        .map(|raw| {
            let mut bits: Vec<Bit> = (0..n).map(|k| Bit(raw & (1 << (n - 1 - k)) != 0)).collect();
            let mut out = Vec::new();
            for party in f.parties() {
                let rest = bits.split_off(party.variables.len());
                out.push(bits.clone());
                bits = rest;
            }
            out
        })
        .collect()
}

/// Exhaustive inputs × seeds grid; writes one CSV row per session.
#[allow(clippy::too_many_arguments)]
pub fn cmd_sweep(
    function: &Path,
    scheme: SchemeArg,
    variant: Option<VariantArg>,
    seeds: usize,
    seed_base: u64,
    ta: Option<f64>,
    tb: Option<f64>,
    nrep: Option<usize>,
    csv_out: Option<&Path>,
) -> Result<Report, CliError> {
    if seeds == 0 {
        return Err(CliError::Config("--seeds must be at least 1".into()));
    }
    let f = load_function(function)?;
    let grid = input_grid(&f);

    let mut csv = String::from("inputs,seed,output,halted,detection_repetition\n");
    let mut mismatches = 0usize;
    let mut halted = 0usize;
    let mut rows = 0usize;

    for point in &grid {
        let rendered: Vec<String> = f
            .parties()
            .iter()
            .zip(point)
            .map(|(p, bits)| format!("{}={}", p.name, bitstring(bits)))
            .collect();
        let inputs_field = rendered.join(";");
        let slices: Vec<&[Bit]> = point.iter().map(Vec::as_slice).collect();
        let expected = f.eval(&slices);

        for k in 0..seeds {
            let seed = seed_base + k as u64;
            let args = RunArgs {
                function,
                scheme,
                variant,
                inputs: &rendered.join(","),
                seed,
                ta,
                tb,
                nrep,
                cheat: None,
            };
            let (_, _, result) = run_session(&args)?;
            let (output, halt_rep) = match result.outcome {
                SessionOutcome::Value(v) => (Some(v), None),
                SessionOutcome::Halted { repetition, .. } => (None, Some(repetition)),
                SessionOutcome::Inconclusive => (None, None),
            };
            if let Some(v) = output {
                if v != expected {
                    mismatches += 1;
                }
            }
            if halt_rep.is_some() {
                halted += 1;
            }
            csv.push_str(&format!(
                "{inputs_field},{seed},{},{},{}\n",
                output.map(|b| b.to_string()).unwrap_or_default(),
                halt_rep.is_some(),
                halt_rep.map(|r| r.to_string()).unwrap_or_default(),
            ));
            rows += 1;
        }
    }

    if let Some(path) = csv_out {
        let path = resolve_out_path(path);
        if let Some(parent) = path.parent() {
            if !parent.as_os_str().is_empty() {
                std::fs::create_dir_all(parent).map_err(|source| CliError::WriteFile {
                    path: path.clone(),
                    source,
                })?;
            }
        }
        std::fs::write(&path, &csv).map_err(|source| CliError::WriteFile {
            path: path.clone(),
            source,
        })?;
    }

    Ok(Report {
        kind: ReportKind::Sweep,
        schema_version: SCHEMA_VERSION,
        seed: Some(seed_base),
        payload: json!({
            "scheme": format!("{scheme:?}").to_lowercase(),
            "grid_points": grid.len(),
            "seeds_per_point": seeds,
            "rows": rows,
            "mismatches": mismatches,
            "halted": halted,
        }),
    })
}

/// Exact posterior and mutual-information audit of an observed session.
pub fn cmd_privacy_audit(
    function: &Path,
    scheme: SchemeArg,
    variant: Option<VariantArg>,
    inputs: &str,
    coalitions: &[String],
    seed: u64,
) -> Result<Report, CliError> {
    let f = load_function(function)?;
    let decomp = inner_product_decomposition(&f)?;
    let parsed = parse_inputs(inputs, &f)?;
    let (x, y) = (&parsed[0], &parsed[1]);

    let two_party_scheme = match scheme {
        SchemeArg::A => TwoPartyScheme::A,
        SchemeArg::B => TwoPartyScheme::B(variant_of(variant)),
        SchemeArg::B1 => TwoPartyScheme::BOneSided,
        other => {
            return Err(CliError::Config(format!(
                "privacy-audit covers schemes a, b and b1, not {other:?}"
            )))
        }
    };

    // Produce the observed session deterministically from the seed.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let result = match two_party_scheme {
        TwoPartyScheme::A => run_scheme_a(&decomp, x, y, &mut rng)?,
        TwoPartyScheme::B(v) => run_scheme_b(&decomp, x, y, &mut rng, v)?,
        TwoPartyScheme::BOneSided => run_scheme_b_one_sided(&decomp, x, y, &mut rng)?,
    };

    let coalition_sets: Vec<BTreeSet<PartyId>> = if coalitions.is_empty() {
        [PartyId::Alice, PartyId::Bob, PartyId::Charlie]
            .into_iter()
            .map(|p| BTreeSet::from([p]))
            .collect()
    } else {
        coalitions
            .iter()
            .map(|spec| parse_coalition(spec))
            .collect::<Result<_, _>>()?
    };

    let mut audits = Vec::new();
    for members in coalition_sets {
        let coalition = Coalition {
            members: members.clone(),
            may_exchange_quantum: false,
        };
        let observed = result.coalition_view(&members);
        let report = posterior_from_view(
            two_party_scheme,
            &decomp,
            &coalition,
            &observed,
            &Prior::Uniform,
        )?;
        audits.push(json!({
            "coalition": members.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "leakage_bits": report.leakage_bits,
            "ideal_leakage_bits": report.ideal_leakage_bits,
            "excess_leakage_bits": report.excess_leakage_bits(),
            "posterior": serde_json::to_value(&report.posterior).expect("serializes"),
            "prior": serde_json::to_value(&report.prior).expect("serializes"),
        }));
    }

    Ok(Report {
        kind: ReportKind::Privacy,
        schema_version: SCHEMA_VERSION,
        seed: Some(seed),
        payload: json!({
            "scheme": format!("{scheme:?}").to_lowercase(),
            "inputs": echo_inputs(&f, &parsed),
            "audits": audits,
        }),
    })
}

/// Run a cheating campaign and report detection statistics.
#[allow(clippy::too_many_arguments)]
pub fn cmd_attack(
    function: &Path,
    inputs: &str,
    cheat: &str,
    ta: f64,
    tb: f64,
    nrep: usize,
    trials: usize,
    seed: u64,
) -> Result<Report, CliError> {
    let f = load_function(function)?;
    let decomp = inner_product_decomposition(&f)?;
    let parsed = parse_inputs(inputs, &f)?;
    let cheat = parse_cheat(cheat)?;
    let policy = TesterPolicy::new(ta, tb, nrep)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let report = run_cheat_campaign(
        &decomp, &parsed[0], &parsed[1], policy, &cheat, trials, &mut rng,
    )?;

    Ok(Report {
        kind: ReportKind::Detection,
        schema_version: SCHEMA_VERSION,
        seed: Some(seed),
        payload: json!({
            "cheat": serde_json::to_value(&cheat).expect("serializes"),
            "t_a": ta,
            "t_b": tb,
            "n_rep": nrep,
            "report": serde_json::to_value(&report).expect("serializes"),
        }),
    })
}

/// Mount the EPR polling attack against the one-sided scheme.
pub fn cmd_epr(
    function: &Path,
    inputs: &str,
    allow_quantum: bool,
    seed: u64,
) -> Result<Report, CliError> {
    let f = load_function(function)?;
    let decomp = inner_product_decomposition(&f)?;
    let parsed = parse_inputs(inputs, &f)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let result = epr_attack(&decomp, &parsed[0], &parsed[1], allow_quantum, &mut rng)?;

    Ok(Report {
        kind: ReportKind::Epr,
        schema_version: SCHEMA_VERSION,
        seed: Some(seed),
        payload: json!({
            "quantum_channel_allowed": allow_quantum,
            "success": result.success,
            "polled_outputs": result
                .polled_outputs
                .iter()
                .map(|(y, v)| json!({"y": bitstring(y), "value": v.as_u8()}))
                .collect::<Vec<_>>(),
        }),
    })
}

/// Dispatch a parsed command; returns the process exit code.
pub(crate) fn dispatch(command: Command) -> Result<i32, CliError> {
    match command {
        Command::GhzCheck { samples, seed, out } => {
            let report = cmd_ghz_check(samples, seed)?;
            write_report(&report, out.as_deref())?;
            Ok(0)
        }
        Command::Decompose { function, out } => {
            let report = cmd_decompose(&function)?;
            write_report(&report, out.as_deref())?;
            Ok(0)
        }
        Command::Run {
            config,
            function,
            scheme,
            variant,
            inputs,
            seed,
            ta,
            tb,
            nrep,
            cheat,
            transcript,
            out,
        } => {
            let (report, code) = match config {
                Some(path) => {
                    let config = super::ExperimentConfig::load(&path)?;
                    let policy = config.tester_policy;
                    cmd_run(
                        &config.function_file,
                        config.scheme_arg()?,
                        config.variant_arg()?,
                        &config.inputs,
                        config.seed,
                        policy.map(|p| p.t_a),
                        policy.map(|p| p.t_b),
                        policy.map(|p| p.n_rep),
                        config.cheat.as_deref(),
                        transcript.as_deref(),
                    )?
                }
                None => cmd_run(
                    &function.expect("clap enforces --function without --config"),
                    scheme.expect("clap enforces --scheme without --config"),
                    variant,
                    &inputs.expect("clap enforces --inputs without --config"),
                    seed,
                    ta,
                    tb,
                    nrep,
                    cheat.as_deref(),
                    transcript.as_deref(),
                )?,
            };
            write_report(&report, out.as_deref())?;
            Ok(code)
        }
        Command::Sweep {
            function,
            scheme,
            variant,
            seeds,
            seed,
            ta,
            tb,
            nrep,
            csv,
            out,
        } => {
            let report = cmd_sweep(
                &function,
                scheme,
                variant,
                seeds,
                seed,
                ta,
                tb,
                nrep,
                csv.as_deref(),
            )?;
            write_report(&report, out.as_deref())?;
            Ok(0)
        }
        Command::PrivacyAudit {
            function,
            scheme,
            variant,
            inputs,
            coalition,
            seed,
            out,
        } => {
            let report = cmd_privacy_audit(&function, scheme, variant, &inputs, &coalition, seed)?;
            write_report(&report, out.as_deref())?;
            Ok(0)
        }
        Command::Attack {
            function,
            inputs,
            cheat,
            ta,
            tb,
            nrep,
            trials,
            seed,
            out,
        } => {
            let report = cmd_attack(&function, &inputs, &cheat, ta, tb, nrep, trials, seed)?;
            write_report(&report, out.as_deref())?;
            Ok(0)
        }
        Command::Epr {
            function,
            inputs,
            allow_quantum,
            seed,
            out,
        } => {
            let report = cmd_epr(&function, &inputs, allow_quantum, seed)?;
            write_report(&report, out.as_deref())?;
            Ok(0)
        }
    }
}

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use gcrs_core::claims::{regseq_is_cap, ClaimContext, ClaimRegistry, Manifest};
use gcrs_core::field::parse_at_poly;
use gcrs_core::graded::{hilbert_function, krull_dimension};
use gcrs_core::regseq::{
    exhaustive_regular_scan, search_regular_sequence, verify_sequence, witness_scan, RegSeqConfig, RegSeqError, SearchResult,
    StrategyRegistry,
};
use gcrs_core::{fixtures, GbError, GbOptions, IdealError, Polynomial, Presentation, QuotientRing, Ring};
use serde_json::{json, Value};

use crate::{Cli, Command, Format};

pub const FORMAT_VERSION: u32 = 1;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_CAP: u8 = 3;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

fn usage(message: impl Into<String>) -> CliError {
    CliError { code: EXIT_USAGE, message: message.into() }
}

impl From<RegSeqError> for CliError {
    fn from(e: RegSeqError) -> Self {
        let code = if regseq_is_cap(&e) { EXIT_CAP } else { EXIT_USAGE };
        CliError { code, message: e.to_string() }
    }
}

impl From<IdealError> for CliError {
    fn from(e: IdealError) -> Self {
        RegSeqError::from(e).into()
    }
}

impl From<GbError> for CliError {
    fn from(e: GbError) -> Self {
        IdealError::from(e).into()
    }
}

pub fn run(cli: &Cli) -> Result<u8, CliError> {
    match &cli.command {
        Command::Check { file } => check(cli, file),
        Command::Gb { file } => gb(cli, file),
        Command::Hilbert { file, max_degree } => hilbert(cli, file, *max_degree),
        Command::Ann { file, element, mod_out, both } => ann(cli, file, element, mod_out.as_deref(), *both),
        Command::Regtest { file, seq, mod_out } => regtest(cli, file, seq, mod_out.as_deref()),
        Command::Scan { file, witnesses, degrees, mod_out } => scan(cli, file, witnesses, degrees, mod_out.as_deref()),
        Command::Regscan { file, degree, mod_out } => regscan(cli, file, *degree, mod_out.as_deref()),
        Command::Search { file, degrees, seed_first, budget, mod_out } => {
            search(cli, file, degrees, seed_first.as_deref(), *budget, mod_out.as_deref())
        }
        Command::Basechange { file, ext, modulus, output } => basechange(cli, file, *ext, modulus.as_deref(), output),
        Command::Dim { file } => dim(cli, file),
        Command::Counterexample { file, claims } => counterexample(cli, file, claims.as_ref()),
        Command::Strategies => strategies(cli),
    }
}

fn emit(cli: &Cli, command: &str, text: &str, value: Value) {
    let out = match cli.format {
        Format::Text => text.to_string(),
        Format::Json => {
            let doc = json!({"format_version": FORMAT_VERSION, "command": command, "result": value});
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
        }
    };
    // a closed pipe is not an error worth reporting
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
}

fn load(cli: &Cli, path: &Path) -> Result<Presentation, CliError> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let pres = Presentation::parse(&text).map_err(|e| {
        let lines: Vec<String> = match e.diagnostics() {
            [] => vec![format!("{}: {e}", path.display())],
            diags => diags.iter().map(|d| format!("{}:{d}", path.display())).collect(),
        };
        usage(lines.join("\n"))
    })?;
    match &cli.gen_order {
        None => Ok(pres),
        Some(order) => {
            let names: Vec<&str> = order.split(',').map(str::trim).collect();
            pres.reorder(&names).map_err(|e| usage(format!("--gen-order: {e}")))
        }
    }
}

fn gb_options(cli: &Cli) -> GbOptions {
    GbOptions::with_degree_cap(cli.degree_cap)
}

fn regseq_config(cli: &Cli) -> Result<RegSeqConfig, CliError> {
    let registry = StrategyRegistry::default();
    let strategy = registry
        .get(&cli.strategy)
        .ok_or_else(|| usage(format!("unknown strategy `{}` (available: {})", cli.strategy, registry.names().join(", "))))?;
    Ok(RegSeqConfig { strategy, enumeration_cap: cli.enum_cap, jobs: cli.jobs, candidate_budget: None })
}

fn split_list(text: &str) -> Vec<&str> {
    text.split(';').map(str::trim).filter(|s| !s.is_empty()).collect()
}

fn parse_expr(ring: &Ring, text: &str) -> Result<Polynomial, CliError> {
    ring.parse(text).map_err(|e| usage(format!("cannot parse `{text}`: {e}")))
}

fn parse_list(ring: &Ring, text: &str) -> Result<Vec<Polynomial>, CliError> {
    split_list(text).into_iter().map(|t| parse_expr(ring, t)).collect()
}

fn quotient(cli: &Cli, pres: &Presentation, mod_out: Option<&str>) -> Result<QuotientRing, CliError> {
    let q = QuotientRing::from_presentation(pres, &gb_options(cli))?;
    match mod_out {
        None => Ok(q),
        Some(text) => {
            let extra = parse_list(q.ring(), text)?;
            Ok(q.mod_out(&extra)?)
        }
    }
}

fn quotient_label(q: &QuotientRing) -> String {
    if q.modded_out().is_empty() {
        "R/I".into()
    } else {
        format!("R/(I + <{}>)", q.modded_out().join(", "))
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "NO"
    }
}

fn check(cli: &Cli, file: &Path) -> Result<u8, CliError> {
    let pres = load(cli, file)?;
    let ring = pres.ring();
    let gens: Vec<String> = (0..ring.nvars()).map(|i| format!("{}:{}", ring.gens().name(i), ring.gens().degree(i))).collect();
    let mut text = format!("field: {} ({})\n", pres.field(), pres.field().describe());
    let _ = writeln!(text, "generators: {} ({})", ring.nvars(), gens.join(" "));
    let _ = writeln!(text, "relations: {}", pres.relations().len());
    for (k, v) in pres.meta().entries() {
        let _ = writeln!(text, "meta {k}: {v}");
    }
    text.push_str("ok\n");
    let value = json!({
        "field": pres.field().describe(),
        "generators": (0..ring.nvars()).map(|i| json!({"name": ring.gens().name(i), "degree": ring.gens().degree(i)})).collect::<Vec<_>>(),
        "relations": pres.relations().iter().map(|r| ring.format(r)).collect::<Vec<_>>(),
        "meta": pres.meta(),
    });
    emit(cli, "check", &text, value);
    Ok(EXIT_OK)
}

fn gb(cli: &Cli, file: &Path) -> Result<u8, CliError> {
    let pres = load(cli, file)?;
    let q = quotient(cli, &pres, None)?;
    let basis = q.gb();
    let ring = q.ring();
    let relations_ok = pres.relations().iter().all(|r| basis.contains(r));
    let spairs_ok = basis.verify_s_pairs();
    let reduced = basis.is_reduced();
    let st = basis.stats();
    let mut text = basis.dump();
    let _ = writeln!(text, "# elements: {}", basis.len());
    let _ = writeln!(text, "# relations reduce to zero: {}", yes(relations_ok));
    let _ = writeln!(text, "# S-pairs reduce to zero: {}", yes(spairs_ok));
    let _ = writeln!(text, "# reduced: {}", yes(reduced));
    let _ = writeln!(
        text,
        "# pairs processed {}, pruned {}, reductions to zero {}, max degree {}",
        st.pairs_processed, st.pairs_pruned, st.reductions_to_zero, st.max_intermediate_degree
    );
    let value = json!({
        "order": basis.order().name(),
        "generators": ring.gens().names(),
        "basis": basis.polys().iter().map(|g| ring.format(g)).collect::<Vec<_>>(),
        "relations_reduce_to_zero": relations_ok,
        "s_pairs_reduce_to_zero": spairs_ok,
        "reduced": reduced,
        "stats": st,
    });
    emit(cli, "gb", &text, value);
    Ok(if relations_ok && spairs_ok && reduced { EXIT_OK } else { EXIT_FAILED })
}

fn hilbert(cli: &Cli, file: &Path, max_degree: u32) -> Result<u8, CliError> {
    let pres = load(cli, file)?;
    let q = quotient(cli, &pres, None)?;
    let table = hilbert_function(&q, max_degree);
    emit(cli, "hilbert", &table.render(), json!({"max_degree": max_degree, "counts": table.counts}));
    Ok(EXIT_OK)
}

fn ann(cli: &Cli, file: &Path, element: &str, mod_out: Option<&str>, both: bool) -> Result<u8, CliError> {
    let pres = load(cli, file)?;
    let mut readings = Vec::new();
    if both {
        readings.push(None);
    }
    readings.push(mod_out);
    let mut text = String::new();
    let mut values = Vec::new();
    for reading in readings {
        let q = quotient(cli, &pres, reading)?;
        let ring = q.ring();
        let f = parse_expr(ring, element)?;
        let ann = q.annihilator(&f).map_err(|e| match e {
            IdealError::ZeroElement => usage(format!("`{element}` is zero in {}", quotient_label(&q))),
            other => other.into(),
        })?;
        let _ = writeln!(text, "Ann({}) in {}:", ring.format(&f), quotient_label(&q));
        if ann.is_zero() {
            text.push_str("  0 (the element is regular)\n");
        }
        let mut gens = Vec::new();
        for c in &ann.classes {
            let d = ring.degree(c).unwrap_or(0);
            let _ = writeln!(text, "  {} (degree {d})", ring.format(c));
            gens.push(json!({"generator": ring.format(c), "degree": d}));
        }
        values.push(json!({"element": ring.format(&f), "mod_out": q.modded_out(), "generators": gens}));
    }
    emit(cli, "ann", &text, json!(values));
    Ok(EXIT_OK)
}

fn regtest(cli: &Cli, file: &Path, seq: &str, mod_out: Option<&str>) -> Result<u8, CliError> {
    let pres = load(cli, file)?;
    let q = quotient(cli, &pres, mod_out)?;
    let cfg = regseq_config(cli)?;
    let fs = parse_list(q.ring(), seq)?;
    let report = verify_sequence(&q, &fs, &cfg)?;
    emit(cli, "regtest", &report.render(q.ring(), cli.timings), report.to_json(q.ring(), cli.timings));
    Ok(if report.overall { EXIT_OK } else { EXIT_FAILED })
}

fn parse_degree_range(text: &str) -> Result<(u32, u32), CliError> {
    let bad = || usage(format!("bad degree range `{text}`; expected A..B or a single degree"));
    match text.split_once("..") {
        Some((a, b)) => Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?)),
        None => {
            let d = text.trim().parse().map_err(|_| bad())?;
            Ok((d, d))
        }
    }
}

fn scan(cli: &Cli, file: &Path, witnesses: &str, degrees: &str, mod_out: Option<&str>) -> Result<u8, CliError> {
    let pres = load(cli, file)?;
    let q = quotient(cli, &pres, mod_out)?;
    let cfg = regseq_config(cli)?;
    let ws = parse_list(q.ring(), witnesses)?;
    let range = parse_degree_range(degrees)?;
    let report = witness_scan(&q, &ws, range, &cfg)?;
    emit(cli, "scan", &report.render(q.ring()), report.to_json(q.ring()));
    Ok(if report.pass() { EXIT_OK } else { EXIT_FAILED })
}

fn regscan(cli: &Cli, file: &Path, degree: u32, mod_out: Option<&str>) -> Result<u8, CliError> {
    let pres = load(cli, file)?;
    let q = quotient(cli, &pres, mod_out)?;
    let cfg = regseq_config(cli)?;
    let report = exhaustive_regular_scan(&q, degree, &cfg)?;
    let text = format!("quotient: {} over {}\n{}", quotient_label(&q), q.ring().field(), report.render(q.ring()));
    emit(cli, "regscan", &text, report.to_json(q.ring()));
    Ok(EXIT_OK)
}

fn search(
    cli: &Cli,
    file: &Path,
    degrees: &str,
    seeds: Option<&str>,
    budget: Option<u64>,
    mod_out: Option<&str>,
) -> Result<u8, CliError> {
    let pres = load(cli, file)?;
    let q = quotient(cli, &pres, mod_out)?;
    let mut cfg = regseq_config(cli)?;
    cfg.candidate_budget = budget;
    let bounds: Vec<u32> = degrees
        .split(',')
        .map(|d| d.trim().parse::<u32>().map_err(|_| usage(format!("bad degree list `{degrees}`"))))
        .collect::<Result<_, _>>()?;
    let seeds = match seeds {
        Some(s) => parse_list(q.ring(), s)?,
        None => vec![],
    };
    let out = search_regular_sequence(&q, &bounds, &seeds, &cfg)?;
    emit(cli, "search", &out.render(q.ring(), cli.timings), out.to_json(q.ring(), cli.timings));
    Ok(match out.result {
        SearchResult::BudgetExhausted => EXIT_CAP,
        _ => EXIT_OK,
    })
}

fn basechange(cli: &Cli, file: &Path, ext: u32, modulus: Option<&str>, output: &Path) -> Result<u8, CliError> {
    let pres = load(cli, file)?;
    let modulus = match modulus {
        Some(text) => Some(parse_at_poly(text, pres.field().characteristic()).map_err(|e| usage(format!("--modulus: {e}")))?),
        None => None,
    };
    let extended = pres.base_change(ext, modulus.as_deref()).map_err(|e| usage(e.to_string()))?;
    fs::write(output, extended.serialize()).map_err(|e| usage(format!("{}: {e}", output.display())))?;
    let text = format!("wrote {} over {} ({})\n", output.display(), extended.field(), extended.field().describe());
    emit(cli, "basechange", &text, json!({"output": output.display().to_string(), "field": extended.field().describe()}));
    Ok(EXIT_OK)
}

fn dim(cli: &Cli, file: &Path) -> Result<u8, CliError> {
    let pres = load(cli, file)?;
    let q = quotient(cli, &pres, None)?;
    let d = krull_dimension(&q).map_err(|e| usage(e.to_string()))?;
    emit(cli, "dim", &format!("Krull dimension: {d}\n"), json!({"krull_dimension": d}));
    Ok(EXIT_OK)
}

fn counterexample(cli: &Cli, file: &Path, claims: Option<&PathBuf>) -> Result<u8, CliError> {
    let pres = load(cli, file)?;
    let sibling = file.with_extension("claims");
    let manifest_text = match claims {
        Some(path) => fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?,
        None if sibling.is_file() => fs::read_to_string(&sibling).map_err(|e| usage(format!("{}: {e}", sibling.display())))?,
        None => fixtures::HS260_CLAIMS.to_string(),
    };
    let manifest = Manifest::parse(&manifest_text).map_err(|e| usage(e.to_string()))?;
    let ctx = ClaimContext { presentation: &pres, gb: gb_options(cli), regseq: regseq_config(cli)? };
    let report = ClaimRegistry::default().run(&ctx, &manifest);
    emit(cli, "counterexample", &report.render(), report.to_json());
    Ok(if report.all_pass() {
        EXIT_OK
    } else if report.any_cap() {
        EXIT_CAP
    } else {
        EXIT_FAILED
    })
}

fn strategies(cli: &Cli) -> Result<u8, CliError> {
    let registry = StrategyRegistry::default();
    let mut text = String::new();
    let mut items = Vec::new();
    for s in registry.iter() {
        let _ = writeln!(text, "{}: {}", s.name(), s.description());
        items.push(json!({"name": s.name(), "description": s.description()}));
    }
    emit(cli, "strategies", &text, json!(items));
    Ok(EXIT_OK)
}

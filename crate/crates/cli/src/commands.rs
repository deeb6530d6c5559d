use std::fmt;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cagroup::acceptance;
use cagroup::ca::{LocalRule, Pattern, RuleFile};
use cagroup::certify::recheck;
use cagroup::corpus::{demo, majority_f2, xor_rule102};
use cagroup::group::Group;
use cagroup::limits::Limits;
use cagroup::probes::{
    balancedness_bijection, check_balanced, find_mutually_erasable, post_surjectivity_probe,
    synthesize_inverse_patch, InverseOptions, WitnessSet,
};
use cagroup::report::{inverse_of, Report, Table};
use cagroup::sofic::{
    chain_bound_log, counting_feasibility, greedy_packing, passing_vertices, permutation_approximation,
    phi_image_count, phi_image_sample, torus_approximation, verify_approximation, LabeledGraph, SoficApproximation,
};
use cagroup::symbolic::{
    decide_balanced_1d, decide_injective_periodic, decide_postsurjective_1d, decide_preinjective, decide_reversible,
    decide_surjective,
};
use cagroup::Error;

use crate::{Check, Command, ProbeArgs, Property, SoficCommand, Witness};

#[derive(Debug)]
pub enum CliError {
    Lib(Error),
    Io(String, std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(path, e) => write!(f, "{path}: {e}"),
        }
    }
}

impl CliError {
    /// Process exit status; 1 is a failed suite or recheck, 2 a usage error.
    pub fn code(&self) -> u8 {
        match self {
            CliError::Io(..) => 3,
            CliError::Lib(e) => match e {
                Error::Parse(_) => 4,
                Error::CapExceeded { .. } => 5,
                Error::MalformedGraph(_) => 6,
                Error::GroupMismatch(_) => 7,
                Error::AlphabetMismatch(..) => 8,
                Error::SupportViolation(_) => 9,
                Error::Unsupported(_) | Error::UnsupportedSubgroup(_) => 10,
                Error::InvalidInput(_) => 11,
                Error::Precondition(_) => 12,
                Error::Inconsistent(_) => 13,
                Error::EmptyLanguage => 14,
            },
        }
    }
}

type Outcome = Result<(Report, Option<String>), CliError>;

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(path.display().to_string(), e))
}

/// A rule file, or one of the builtin names.
pub fn load_rule(spec: &str) -> Result<LocalRule, CliError> {
    let path = Path::new(spec);
    if path.exists() {
        return Ok(RuleFile::parse(&read(path)?)?.to_rule()?);
    }
    match spec {
        "xor102" => Ok(xor_rule102()),
        "majority-f2" => Ok(majority_f2()),
        _ => {
            let code = spec
                .strip_prefix("rule")
                .and_then(|c| c.parse::<u8>().ok())
                .ok_or_else(|| {
                    Error::InvalidInput(format!(
                        "{spec:?} is neither a file nor a builtin (ruleNNN, xor102, majority-f2)"
                    ))
                })?;
            Ok(LocalRule::elementary(code))
        }
    }
}

fn describe_rule(report: &mut Report, spec: &str, rule: &LocalRule) {
    report.push("rule", spec);
    report.push("group", rule.group());
    report.push("states", rule.states());
    let n: Vec<String> = rule.neighborhood().elements().iter().map(|g| g.to_string()).collect();
    report.push("neighborhood", n.join(" "));
}

fn members(spec: Option<&str>, graph: &LabeledGraph, radius: usize, group: &Group, l: &Limits) -> Result<Vec<usize>, CliError> {
    match spec {
        None => Ok(passing_vertices(graph, radius, group, l)?),
        Some(list) => list
            .split(',')
            .filter(|x| !x.trim().is_empty())
            .map(|x| {
                let v: usize = x
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad vertex {x:?}")))?;
                if v >= graph.vertices() {
                    return Err(Error::MalformedGraph(format!("vertex {v} out of range")).into());
                }
                Ok(v)
            })
            .collect(),
    }
}

pub fn run(command: &Command, l: &Limits) -> Outcome {
    match command {
        Command::Decide { rule, property, bound } => decide(rule, *property, *bound, l),
        Command::Probe(args) => probe(args, l),
        Command::Sofic(cmd) => sofic(cmd, l),
        Command::Demo { example, plot_dir } => run_demo(example, plot_dir.as_deref(), l),
        Command::Suite { .. } => suite(l),
        Command::Recheck { rule, report } => run_recheck(rule, report, l),
    }
}

fn decide(spec: &str, property: Property, bound: usize, l: &Limits) -> Outcome {
    let rule = load_rule(spec)?;
    let mut report = Report::new();
    describe_rule(&mut report, spec, &rule);
    let (name, verdict) = match property {
        Property::Surjective => ("surjective", decide_surjective(&rule, l)?),
        Property::Preinjective => ("preinjective", decide_preinjective(&rule, l)?),
        Property::Injective => ("injective", decide_injective_periodic(&rule, l)?),
        Property::Reversible => ("reversible", decide_reversible(&rule, l)?),
        Property::Postsurjective => ("postsurjective", decide_postsurjective_1d(&rule, l)?),
        Property::Balanced => ("balanced", decide_balanced_1d(&rule, bound, l)?),
    };
    report.push("property", name);
    report.push_verdict("", &verdict);
    Ok((report, None))
}

fn probe(args: &ProbeArgs, l: &Limits) -> Outcome {
    let rule = load_rule(&args.rule)?;
    let mut report = Report::new();
    describe_rule(&mut report, &args.rule, &rule);
    match args.check {
        Check::Balanced => {
            report.push("check", "balanced");
            report.push_verdict("", &check_balanced(&rule, args.bound, l)?);
        }
        Check::Erasable => {
            report.push("check", "erasable");
            report.push_verdict("", &find_mutually_erasable(&rule, args.bound, l)?);
        }
        Check::Postsurjective => {
            let witnesses = match args.witness {
                Witness::Uniform => WitnessSet::Uniform((0..rule.states()).collect()),
                Witness::Patched => WitnessSet::Patched {
                    state: args.witness_state,
                    radius: args.witness_radius,
                },
            };
            report.push("check", "postsurjective");
            report.push("witnesses", format!("{witnesses:?}"));
            report.push_verdict("", &post_surjectivity_probe(&rule, &witnesses, args.bound, l)?);
        }
        Check::Inverse => {
            let opts = InverseOptions {
                max_radius: args.bound.max(1),
                samples: args.samples,
                seed: args.seed,
                ..InverseOptions::default()
            };
            let synth = synthesize_inverse_patch(&rule, &opts, l)?;
            report.push("check", "inverse");
            report.push("note", "the preimage search radius escalates heuristically up to the bound");
            report.push("correction_radius", synth.correction_radius);
            report.push("search_radius", synth.search_radius);
            report.push("base_points_checked", synth.base_points_checked);
            report.push("verification", &synth.verification);
            report.push_verdict("", &synth.verdict);
        }
        Check::Bijection => bijection(&rule, args, &mut report, l)?,
    }
    Ok((report, None))
}

fn bijection(rule: &LocalRule, args: &ProbeArgs, report: &mut Report, l: &Limits) -> Result<(), CliError> {
    let group = rule.group();
    let exact;
    let inverse = if group == Group::integers() {
        exact = decide_reversible(rule, l)?;
        inverse_of(&exact)
    } else {
        let opts = InverseOptions {
            samples: args.samples,
            seed: args.seed,
            ..InverseOptions::default()
        };
        exact = synthesize_inverse_patch(rule, &opts, l)?.verdict;
        inverse_of(&exact)
    };
    let inverse = inverse.ok_or_else(|| Error::Precondition(format!("no inverse found: {}", exact.basis)))?;
    let disk = group.disk(args.bound, l)?.elements;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut table = Table::new("pairs", &["first", "second", "first_count", "second_count", "expected", "holds"]);
    let mut held = 0;
    for _ in 0..args.pairs {
        let mut random = || -> Vec<u8> { disk.iter().map(|_| rng.gen_range(0..rule.states())).collect() };
        let (a, b) = (Pattern::on(&disk, &random()), Pattern::on(&disk, &random()));
        let r = balancedness_bijection(rule, inverse, &a, &b, args.bound, l)?;
        held += usize::from(r.holds());
        table.push(vec![
            a.to_string(),
            b.to_string(),
            r.first_count.to_string(),
            r.second_count.to_string(),
            r.expected.to_string(),
            r.holds().to_string(),
        ]);
    }
    report.push("check", "bijection");
    report.push("pairs", args.pairs);
    report.push("seed", args.seed);
    report.push("pairs.held", format!("{held}/{}", args.pairs));
    report.tables.push(table);
    Ok(())
}

fn describe_approximation(report: &mut Report, a: &SoficApproximation, graph_out: Option<&Path>) -> Result<(), CliError> {
    report.push("group", a.group);
    report.push("vertices", a.graph.vertices());
    report.push("radius", a.radius);
    report.push("passing", a.members.len());
    report.push("measured_epsilon", a.measured_epsilon);
    if let Some(path) = graph_out {
        write(path, &a.graph.to_text())?;
        report.push("graph", path.display());
    }
    Ok(())
}

fn sofic(cmd: &SoficCommand, l: &Limits) -> Outcome {
    let mut report = Report::new();
    match cmd {
        SoficCommand::Torus {
            dim,
            side,
            radius,
            graph_out,
        } => {
            let a = torus_approximation(*dim, *side, *radius, l)?;
            describe_approximation(&mut report, &a, graph_out.as_deref())?;
        }
        SoficCommand::Permutation {
            rank,
            vertices,
            radius,
            seed,
            graph_out,
        } => {
            let a = permutation_approximation(*rank, *vertices, *radius, *seed, l)?;
            report.push("seed", seed);
            describe_approximation(&mut report, &a, graph_out.as_deref())?;
        }
        SoficCommand::Verify {
            group,
            graph,
            radius,
            eps,
            members: list,
        } => {
            let group = Group::parse(group)?;
            let g = LabeledGraph::parse(&read(graph)?, &group)?;
            let u = members(list.as_deref(), &g, *radius, &group, l)?;
            report.push("group", group);
            report.push("vertices", g.vertices());
            report.push("radius", radius);
            report.push("epsilon", eps);
            report.push_verdict("", &verify_approximation(&g, &u, *radius, *eps, &group, l)?);
        }
        SoficCommand::Pack {
            group,
            graph,
            ell,
            members: list,
        } => {
            let group = Group::parse(group)?;
            let g = LabeledGraph::parse(&read(graph)?, &group)?;
            let u = members(list.as_deref(), &g, 2 * ell, &group, l)?;
            let w = greedy_packing(&g, &u, *ell, &group, l)?;
            report.push("group", group);
            report.push("vertices", g.vertices());
            report.push("ell", ell);
            report.push("members", u.len());
            report.push("packing.size", w.len());
            report.push("packing", w.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","));
        }
        SoficCommand::Phicount {
            rule,
            graph,
            members: list,
            samples,
            seed,
        } => {
            let spec = rule;
            let rule = load_rule(spec)?;
            let group = rule.group();
            let g = LabeledGraph::parse(&read(graph)?, &group)?;
            let u = members(list.as_deref(), &g, rule.radius(), &group, l)?;
            describe_rule(&mut report, spec, &rule);
            report.push("vertices", g.vertices());
            report.push("members", u.len());
            match samples {
                None => report.push("image.count", phi_image_count(&g, &u, &rule, l)?),
                Some(n) => {
                    report.push("image.sampled", n);
                    report.push("seed", seed);
                    report.push("image.lower_bound", phi_image_sample(&g, &u, &rule, *n, *seed, l)?);
                }
            }
            let s = rule.states() as f64;
            report.push("image.full_log", format!("{:.6}", u.len() as f64 * s.ln()));
        }
        SoficCommand::Feasibility { s, dr, d2r, eps } => {
            let f = counting_feasibility(*s, *dr, *d2r, *eps)?;
            report.push("s", s);
            report.push("disk_r", dr);
            report.push("disk_2r", d2r);
            report.push("epsilon", eps);
            report.push("feasible", f.feasible);
            report.push("log_margin", format!("{:.12}", f.log_margin));
            let mut table = Table::new("chain-bound", &["vertices", "packing", "log_bound", "log_full"]);
            for vertices in [100u64, 1000, 10000] {
                let packing = vertices / (2 * d2r);
                table.push(vec![
                    vertices.to_string(),
                    packing.to_string(),
                    format!("{:.6}", chain_bound_log(*s, *dr, packing, vertices)),
                    format!("{:.6}", vertices as f64 * (*s as f64).ln()),
                ]);
            }
            report.tables.push(table);
        }
    }
    Ok((report, None))
}

fn run_demo(id: &str, plot_dir: Option<&Path>, l: &Limits) -> Outcome {
    let mut report = demo(id, l)?;
    if let Some(dir) = plot_dir {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Io(dir.display().to_string(), e))?;
        for t in &report.tables.clone() {
            let path: PathBuf = dir.join(format!("{id}-{}.tsv", t.name));
            write(&path, &t.to_tsv())?;
            report.push(format!("plot.{}", t.name), path.display());
        }
    }
    let failed = report.get("assertions.passed").filter(|p| {
        let (a, b) = p.split_once('/').unwrap_or(("", ""));
        a != b
    });
    let failure = failed.map(|p| format!("example {id}: only {p} assertions passed"));
    Ok((report, failure))
}

fn suite(l: &Limits) -> Outcome {
    let mut report = Report::new();
    let mut table = Table::new("criteria", &["id", "title", "result", "seconds", "budget", "detail"]);
    let mut failed = Vec::new();
    for c in acceptance::criteria() {
        let r = c.run(l);
        eprintln!("{}", r.line());
        if !r.passed() {
            failed.push(r.id);
        }
        table.push(vec![
            r.id.to_string(),
            r.title.to_string(),
            if r.passed() { "pass" } else { "fail" }.to_string(),
            format!("{:.2}", r.elapsed.as_secs_f64()),
            r.budget.as_secs().to_string(),
            r.detail,
        ]);
    }
    report.push("suite", "acceptance");
    report.push("passed", format!("{}/{}", table.rows.len() - failed.len(), table.rows.len()));
    report.tables.push(table);
    let failure = (!failed.is_empty()).then(|| format!("failed criteria: {failed:?}"));
    Ok((report, failure))
}

fn run_recheck(spec: &str, path: &Path, l: &Limits) -> Outcome {
    let rule = load_rule(spec)?;
    let source = Report::parse(&read(path)?)?;
    let prefixes: Vec<String> = source
        .entries
        .iter()
        .filter_map(|(k, _)| k.strip_suffix("status").map(String::from))
        .collect();
    let mut report = Report::new();
    describe_rule(&mut report, spec, &rule);
    report.push("source", path.display());
    let mut table = Table::new("certificates", &["verdict", "status", "certificate", "result"]);
    let mut rejected = 0;
    for prefix in prefixes {
        let verdict = match source.verdict(&prefix, rule.group()) {
            Ok(v) => v,
            Err(Error::Parse(_)) if source.get(&format!("{prefix}basis")).is_none() => continue,
            Err(e) => return Err(e.into()),
        };
        let result = match recheck(&rule, &verdict, l)? {
            Some(true) => "valid",
            Some(false) => {
                rejected += 1;
                "rejected"
            }
            None if verdict.certificate.is_none() => "no certificate",
            None => "needs more than the rule",
        };
        table.push(vec![
            if prefix.is_empty() { "-".into() } else { prefix.trim_end_matches('.').to_string() },
            verdict.status.to_string(),
            verdict.certificate.as_ref().map_or("-", |c| c.kind()).to_string(),
            result.to_string(),
        ]);
    }
    report.push("rejected", rejected);
    report.tables.push(table);
    if rejected > 0 {
        return Err(Error::Inconsistent(format!("{rejected} certificate(s) rejected")).into());
    }
    Ok((report, None))
}

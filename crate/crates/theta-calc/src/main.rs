//! Command-line front end: every subcommand is a thin wrapper over the
//! library. Reports embed the bounds and window used; runs with the same
//! configuration and seed produce byte-identical output.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use theta_calc::error::Error;
use theta_calc::families::{self, FamilyBounds};
use theta_calc::json as enc;
use theta_calc::report::{OutputFormat, RunConfig, SuiteReport};
use theta_calc::site::{Site, Window};
use theta_calc::suites;
use theta_calc::theta::ThetaMorphism;

#[derive(Parser)]
#[command(name = "theta-calc", version, about = "Computations in cell categories and presheaves on Θ-sites")]
struct Cli {
    /// Output format for reports
    #[arg(long, global = true, default_value = "text")]
    format: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count (or list) the morphisms between two cell objects
    Hom {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        src: String,
        #[arg(long)]
        dst: String,
        #[arg(long)]
        list: bool,
    },
    /// Evaluate a presented presheaf at a site object
    Eval {
        #[arg(long)]
        presheaf: PathBuf,
        #[arg(long)]
        at: String,
    },
    /// Check the Segal maps of a diagram for strictness
    SegalCheck {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        k_max: usize,
        #[arg(long, default_value_t = 2)]
        window_degree: usize,
    },
    /// Check relative latching maps of a map of diagrams
    LatchCheck {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        levels: usize,
        #[arg(long, default_value_t = 2)]
        window_degree: usize,
    },
    /// Decide a right-lifting problem
    Lift {
        /// the candidate fibration, as a map of presented presheaves
        #[arg(long)]
        f: PathBuf,
        /// the test cofibration, as a map of presented presheaves
        #[arg(long)]
        i: Option<PathBuf>,
        /// or a named family: css, free, reduced
        #[arg(long)]
        family: Option<String>,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 2)]
        p_max: usize,
        #[arg(long, default_value_t = 2)]
        m_max: usize,
        #[arg(long, default_value_t = 2)]
        inner_degree: usize,
        #[arg(long, default_value_t = 3)]
        truncation: usize,
        #[arg(long, default_value_t = 2)]
        window_degree: usize,
    },
    /// Collapse level zero of a diagram to components
    Reduce {
        #[arg(long)]
        input: PathBuf,
    },
    /// Level counts and strictness of the nerve of a category
    Nerve {
        /// enriched category with discrete or forced composition
        #[arg(long)]
        input: Option<PathBuf>,
        /// or build the two-object suspension of this presheaf
        #[arg(long)]
        ua: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        levels: usize,
        #[arg(long, default_value_t = 2)]
        window_degree: usize,
    },
    /// Round-trip a category through its nerve and back
    Roundtrip {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run a randomized verification suite
    Fuzz {
        /// suite name, or `all`
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 2)]
        degree_bound: usize,
        #[arg(long, default_value_t = 2)]
        window_degree: usize,
        #[arg(long, default_value_t = 2)]
        p_max: usize,
        #[arg(long, default_value_t = 2)]
        m_max: usize,
        #[arg(long, default_value_t = 2)]
        inner_degree: usize,
        #[arg(long, default_value_t = 3)]
        truncation: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.format.as_str() {
        "json" => OutputFormat::Json,
        "csv" => OutputFormat::Csv,
        "text" => OutputFormat::Text,
        other => {
            eprintln!("unknown format {other}");
            return ExitCode::from(2);
        }
    };
    match run(cli.command, format) {
        Ok(all_pass) => {
            if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn read_json(path: &PathBuf) -> Result<Value, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

fn emit(format: OutputFormat, payload: &Value, text: String) {
    match format {
        OutputFormat::Json => {
            println!("{}", serde_json::to_string_pretty(payload).expect("payload"))
        }
        OutputFormat::Csv | OutputFormat::Text => println!("{text}"),
    }
}

fn run(command: Command, format: OutputFormat) -> Result<bool, Error> {
    match command {
        Command::Hom { n, src, dst, list } => {
            let a = enc::theta_object_from_str(n, &src)?;
            let b = enc::theta_object_from_str(n, &dst)?;
            let hom = ThetaMorphism::hom(&a, &b);
            let payload = json!({
                "n": n,
                "src": enc::theta_object_to_json(&a),
                "dst": enc::theta_object_to_json(&b),
                "count": hom.len(),
                "morphisms": if list {
                    Value::Array(hom.iter().map(enc::theta_morphism_to_json).collect())
                } else {
                    Value::Null
                },
            });
            emit(format, &payload, format!("{}", hom.len()));
            Ok(true)
        }
        Command::Eval { presheaf, at } => {
            let p = enc::presheaf_from_json(&read_json(&presheaf)?)?;
            let cooked = at.replace('*', "\"*\"").replace("\"\"*\"\"", "\"*\"");
            let d = enc::site_object_from_json(p.site(), &serde_json::from_str(&cooked)?)?;
            let n = p.size_at(&d);
            let labels: Vec<String> =
                (0..n).map(|i| enc::element_label(&p, &d, i)).collect();
            let payload = json!({"at": enc::site_object_to_json(&d), "count": n, "elements": labels});
            emit(format, &payload, format!("{n}"));
            Ok(true)
        }
        Command::SegalCheck { input, k_max, window_degree } => {
            let x = enc::spo_from_json(&read_json(&input)?, window_degree)?;
            let probe = Window::up_to_degree(&x.inner_site(), window_degree);
            let witness = x.is_segal_strict(&probe, k_max)?;
            let pass = witness.is_none();
            let payload = json!({
                "strict": pass,
                "witness": witness,
                "k_max": k_max,
                "window_degree": window_degree,
            });
            emit(
                format,
                &payload,
                if pass {
                    "strict Segal object: pass".to_string()
                } else {
                    format!("not strict: {}", payload["witness"])
                },
            );
            Ok(pass)
        }
        Command::LatchCheck { input, levels, window_degree } => {
            let f = enc::map_from_json(&read_json(&input)?)?;
            let site = f.source().site().clone();
            if site.factors().first() != Some(&1) {
                return Err(Error::Malformed(
                    "latch-check expects diagrams with a simplicial first factor".into(),
                ));
            }
            let inner = site.without_factor(0)?;
            let probe = Window::up_to_degree(&inner, window_degree);
            let xs = theta_calc::segal::SegalPreObject::from_total_unchecked(f.source().clone());
            let ys = theta_calc::segal::SegalPreObject::from_total_unchecked(f.target().clone());
            let report = theta_calc::reedy::cofibration_check(&f, &xs, &ys, levels, &probe)?;
            let pass = report.levels.iter().all(|l| l.latching_mono);
            let payload = json!({
                "levels": report.levels.iter().map(|l| json!({
                    "m": l.m,
                    "latching_mono": l.latching_mono,
                    "witness": l.witness.as_ref().map(|(d, i, j)| json!({
                        "at": enc::site_object_to_json(d), "elements": [i, j],
                    })),
                })).collect::<Vec<_>>(),
                "window_degree": window_degree,
            });
            emit(
                format,
                &payload,
                report
                    .levels
                    .iter()
                    .map(|l| format!("m={}: {}", l.m, if l.latching_mono { "mono" } else { "NOT mono" }))
                    .collect::<Vec<_>>()
                    .join("\n"),
            );
            Ok(pass)
        }
        Command::Lift {
            f,
            i,
            family,
            n,
            p_max,
            m_max,
            inner_degree,
            truncation,
            window_degree,
        } => {
            let fmap = enc::map_from_json(&read_json(&f)?)?;
            let bounds = FamilyBounds {
                p_max,
                m_max,
                inner_degree,
                iso_nerve_truncation: truncation,
            };
            let members: Vec<theta_calc::presheaf::PresheafMap> = match (&i, &family) {
                (Some(path), None) => vec![enc::map_from_json(&read_json(path)?)?],
                (None, Some(name)) => match name.as_str() {
                    "css" => families::complete_segal_acyclic_family(&bounds)?,
                    "free" => families::free_generator_family(n, &bounds)?,
                    "reduced" => {
                        let probe =
                            Window::up_to_degree(&families::diagram_site(n), window_degree);
                        families::reduced_generator_family(n, &bounds, &probe)?
                            .into_iter()
                            .map(|m| m.map)
                            .collect()
                    }
                    other => {
                        return Err(Error::Malformed(format!("unknown family {other}")))
                    }
                },
                _ => {
                    return Err(Error::Malformed(
                        "lift needs exactly one of --i or --family".into(),
                    ))
                }
            };
            let mut all = true;
            let mut rows = Vec::new();
            for (k, member) in members.iter().enumerate() {
                let rep = families::has_rlp(&fmap, member)?;
                all = all && rep.rlp;
                rows.push(json!({
                    "member": k,
                    "rlp": rep.rlp,
                    "squares": rep.squares,
                    "witness_square": rep.witness,
                }));
            }
            let payload = json!({
                "problem": { "members": members.len(), "family": family, },
                "rlp": all,
                "window_degree": window_degree,
                "bounds": bounds,
                "results": rows,
            });
            emit(format, &payload, format!("rlp: {all}"));
            Ok(all)
        }
        Command::Reduce { input } => {
            let x = enc::presheaf_from_json(&read_json(&input)?)?;
            if x.site().factors().first() != Some(&1) {
                return Err(Error::Malformed(
                    "reduce expects a diagram with a simplicial first factor".into(),
                ));
            }
            let r = theta_calc::segal::reduction(&x)?;
            let payload = json!({
                "components": r.pi0_classes,
                "reduced": enc::presentation_to_json(r.object.presentation().expect("presented")),
            });
            emit(format, &payload, format!("components: {}", r.pi0_classes));
            Ok(true)
        }
        Command::Nerve { input, ua, levels, window_degree } => {
            let cat = match (&input, &ua) {
                (Some(path), None) => enc::enriched_from_json(&read_json(path)?, window_degree)?,
                (None, Some(path)) => {
                    let a = enc::presheaf_from_json(&read_json(path)?)?;
                    theta_calc::enriched::EnrichedCategory::suspension(&a)
                }
                _ => {
                    return Err(Error::Malformed(
                        "nerve needs exactly one of --input or --ua".into(),
                    ))
                }
            };
            let nerve = cat.nerve();
            let inner = nerve.inner_site();
            let probe = Window::up_to_degree(&inner, window_degree);
            let strict = nerve.is_segal_strict(&probe, 3)?;
            let mut counts = Vec::new();
            for p in 0..=levels {
                let mut row = Vec::new();
                for theta in probe.objects() {
                    row.push(json!({
                        "at": enc::site_object_to_json(theta),
                        "count": nerve.level(p).size_at(theta),
                    }));
                }
                counts.push(Value::Array(row));
            }
            let ho = theta_calc::segal::homotopy_category(&nerve, &probe)?;
            let payload = json!({
                "objects": cat.objects(),
                "strict": strict.is_none(),
                "levels": counts,
                "window_degree": window_degree,
                "homotopy_category": enc::ho_category_to_json(&ho),
            });
            let text = (0..=levels)
                .map(|p| {
                    format!(
                        "level {p}: {}",
                        probe
                            .objects()
                            .iter()
                            .map(|t| format!("{}@{t}", nerve.level(p).size_at(t)))
                            .collect::<Vec<_>>()
                            .join(" ")
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            emit(format, &payload, text);
            Ok(strict.is_none())
        }
        Command::Roundtrip { input, seed } => {
            let cat = match input {
                Some(path) => enc::enriched_from_json(&read_json(&path)?, 2)?,
                None => {
                    let mut rng = theta_calc::gen::rng_from_seed(seed);
                    theta_calc::gen::rand_enriched_category(&mut rng, &Site::theta(1), 2)?
                }
            };
            let (functor, probe) = theta_calc::enriched::roundtrip_comparison(&cat)?;
            functor.verify(&probe)?;
            let mut pass = true;
            for x in 0..cat.objects().len() {
                for y in 0..cat.objects().len() {
                    pass = pass && functor.hom_maps[&(x, y)].is_iso_on(&probe);
                }
            }
            let nerve = cat.nerve();
            let strict = theta_calc::enriched::strictify(&nerve, &probe)?;
            let cmp = theta_calc::enriched::nerve_comparison(&nerve, &strict);
            let dw = Window::up_to_degree(nerve.total().site(), 2);
            pass = pass && cmp.is_iso_on(&dw) && cmp.naturality_failure_on(&dw).is_none();
            let payload = json!({"roundtrip": pass, "objects": cat.objects()});
            emit(format, &payload, format!("roundtrip: {pass}"));
            Ok(pass)
        }
        Command::Fuzz {
            suite,
            seed,
            count,
            n,
            degree_bound,
            window_degree,
            p_max,
            m_max,
            inner_degree,
            truncation,
        } => {
            let config = RunConfig {
                n,
                degree_bound,
                window_degree,
                seed,
                count,
                bounds: FamilyBounds {
                    p_max,
                    m_max,
                    inner_degree,
                    iso_nerve_truncation: truncation,
                },
            };
            let names: Vec<&str> = if suite == "all" {
                suites::SUITES.to_vec()
            } else {
                vec![suites::SUITES
                    .iter()
                    .find(|s| **s == suite)
                    .copied()
                    .ok_or_else(|| Error::Malformed(format!("unknown suite {suite}")))?]
            };
            let threads: usize = std::env::var("THETA_CALC_THREADS")
                .ok()
                .and_then(|v| v.parse().ok())
                .unwrap_or(1)
                .max(1);
            let reports = run_suites(&names, &config, threads)?;
            let mut all = true;
            for rep in &reports {
                all = all && rep.pass;
                print!("{}", rep.render(format));
                if format == OutputFormat::Json {
                    println!();
                }
            }
            Ok(all)
        }
    }
}

/// Runs suites, sharding across threads when asked; the output order is the
/// input order regardless of the thread count.
fn run_suites(
    names: &[&str],
    config: &RunConfig,
    threads: usize,
) -> Result<Vec<SuiteReport>, Error> {
    if threads <= 1 || names.len() <= 1 {
        return names.iter().map(|n| suites::run_suite(n, config)).collect();
    }
    let mut slots: Vec<Option<Result<SuiteReport, Error>>> =
        (0..names.len()).map(|_| None).collect();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for chunk in names
            .iter()
            .enumerate()
            .collect::<Vec<_>>()
            .chunks(names.len().div_ceil(threads))
        {
            let chunk: Vec<(usize, &str)> = chunk.iter().map(|(i, s)| (*i, **s)).collect();
            let config = config.clone();
            handles.push(scope.spawn(move || {
                chunk
                    .into_iter()
                    .map(|(i, name)| (i, suites::run_suite(name, &config)))
                    .collect::<Vec<_>>()
            }));
        }
        for h in handles {
            for (i, r) in h.join().expect("suite thread") {
                slots[i] = Some(r);
            }
        }
    });
    slots.into_iter().map(|s| s.expect("every slot filled")).collect()
}

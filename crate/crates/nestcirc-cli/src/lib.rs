//! Command-line front end for nestcirc.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};

use clap::{Args, Parser, Subcommand, ValueEnum};
use nestcirc::encodings::{
    encode_forall_exists, encode_inference_nat, encode_mc_nat, encode_xhorn,
    expected_forall_exists, expected_inference, expected_mc, PrenexQbf,
};
use nestcirc::engine::{stats, Engine, Strategy, Theory};
use nestcirc::horn::flatten;
use nestcirc::qbf::{prenex_cnf, sigma, sigma_star, tau, write_qdimacs, Closure};
use nestcirc::semantics::{Interp, DEFAULT_CAP};
use nestcirc::syntax::{
    parse_lcirc, parse_lcirc_new, parse_model, parse_nat, render_formula, render_model, render_nat,
    Alphabet,
};
use nestcirc::transforms::{
    compile_prioritized, eliminate_fixed_lcirc, eliminate_fixed_nat, lower_nat, PriorityLevels,
};
use nestcirc::{Error, Result};

#[derive(Parser, Debug)]
#[command(
    name = "nestcirc",
    version,
    about = "Reasoning with nested circumscription and nested abnormality theories"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Theory kind; inferred from the extension (.lc or .nat) when omitted
    #[arg(long, value_enum)]
    kind: Option<KindArg>,
    #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
    strategy: StrategyArg,
    /// Largest alphabet the brute-force oracle accepts
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Cross-check the answer with a second strategy
    #[arg(long)]
    verify: bool,
    /// Worker threads when the input is a directory
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum KindArg {
    Lc,
    Nat,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum StrategyArg {
    Auto,
    Qbf,
    Brute,
    Horn,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum ClosureArg {
    Exists,
    Forall,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum EncodingArg {
    Fe,
    Inf,
    Mc,
    Xhorn,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Is the interpretation a model of the theory?
    Check {
        /// True atoms, comma separated
        #[arg(short, long)]
        model: String,
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Is the formula true in every model?
    Infer {
        #[arg(short, long)]
        query: String,
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Does the theory have a model?
    Sat {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// List all models (exhaustive, cap-guarded)
    Models {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Flat Horn normal form in DIMACS plus the least model
    Flatten {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Prenex CNF of the QBF translation in QDIMACS
    ToQdimacs {
        #[arg(long, value_enum, default_value_t = ClosureArg::Exists)]
        closure: ClosureArg,
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Quantifier-free embedding of a NAT
    SigmaStar {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Remove fixed letters
    EliminateFixed {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Rewrite min/max declarations into ordinary blocks
    LowerMinmax {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Compile prioritized circumscription into a nesting tower
    Prioritize {
        /// Levels from highest priority, separated by `;`, e.g. "a b; c"
        #[arg(long)]
        levels: String,
        /// Floating letters
        #[arg(long = "float", default_value = "")]
        floating: String,
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Generate reduction instances from prenex QBFs
    Encode {
        #[arg(value_enum)]
        encoding: EncodingArg,
        /// A QBF file or a directory of *.qbf files
        input: PathBuf,
        /// Output directory for the generated files
        #[arg(short, long, default_value = ".")]
        out: PathBuf,
    },
    /// Structural statistics
    Stats {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

/// Outcome of one command: text for stdout and the exit code.
struct Outcome {
    text: String,
    code: i32,
}

impl Outcome {
    fn answer(yes: bool, yes_text: &str, no_text: &str) -> Outcome {
        Outcome {
            text: format!("{}\n", if yes { yes_text } else { no_text }),
            code: if yes { 0 } else { 1 },
        }
    }

    fn text(text: String) -> Outcome {
        Outcome { text, code: 0 }
    }
}

/// Runs the tool on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            if code == 0 {
                let _ = write!(out, "{e}");
                return 0;
            }
            let _ = write!(err, "{e}");
            return 2;
        }
    };
    match dispatch(cli.command) {
        Ok(o) => {
            let _ = out.write_all(o.text.as_bytes());
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn engine(c: &Common) -> Engine {
    let strategy = match c.strategy {
        StrategyArg::Auto => Strategy::Auto,
        StrategyArg::Qbf => Strategy::Qbf,
        StrategyArg::Brute => Strategy::Brute,
        StrategyArg::Horn => Strategy::Horn,
    };
    Engine {
        strategy,
        cap: c.cap,
        verify: c.verify,
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::semantic(format!("cannot read {}: {e}", path.display())))
}

fn load(path: &Path, kind: Option<KindArg>) -> Result<Theory> {
    let kind = match kind {
        Some(k) => k,
        None => match path.extension().and_then(|e| e.to_str()) {
            Some("lc") => KindArg::Lc,
            Some("nat") => KindArg::Nat,
            _ => {
                return Err(Error::semantic(format!(
                    "cannot infer theory kind of {}; use --kind",
                    path.display()
                )))
            }
        },
    };
    let text = read(path)?;
    Ok(match kind {
        KindArg::Lc => {
            let (formula, alphabet) = parse_lcirc_new(&text)?;
            Theory::Lcirc { formula, alphabet }
        }
        KindArg::Nat => Theory::Nat(parse_nat(&text)?),
    })
}

fn load_nat(path: &Path, kind: Option<KindArg>) -> Result<nestcirc::syntax::Nat> {
    match load(path, kind)? {
        Theory::Nat(t) => Ok(t),
        Theory::Lcirc { .. } => Err(Error::semantic("this command expects a NAT")),
    }
}

fn model_of(text: &str, alpha: &Alphabet) -> Result<Interp> {
    Ok(Interp::from_true(alpha.len(), &parse_model(text, alpha)?))
}

fn braces(m: &Interp, alpha: &Alphabet) -> String {
    format!("{{{}}}", render_model(&m.true_atoms(), alpha))
}

fn introduced(alpha: &Alphabet, atoms: &[nestcirc::syntax::Atom]) -> String {
    format!("# introduced: {}\n", alpha.names(atoms).join(" "))
}

/// Applies `f` to a file, or to every theory file of a directory in name order.
fn per_file(
    path: &Path,
    common: &Common,
    f: &(dyn Fn(&Path) -> Result<Outcome> + Sync),
) -> Result<Outcome> {
    if !path.is_dir() {
        return f(path);
    }
    let mut files: Vec<PathBuf> = fs::read_dir(path)
        .map_err(|e| Error::semantic(format!("cannot read {}: {e}", path.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            common.kind.is_some()
                || matches!(
                    p.extension().and_then(|e| e.to_str()),
                    Some("lc") | Some("nat")
                )
        })
        .collect();
    files.sort();
    let results: Vec<std::sync::Mutex<Option<Result<Outcome>>>> =
        files.iter().map(|_| std::sync::Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|s| {
        for _ in 0..common.jobs.max(1) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= files.len() {
                    break;
                }
                *results[i].lock().unwrap() = Some(f(&files[i]));
            });
        }
    });
    let mut text = String::new();
    let mut code = 0;
    for (p, r) in files.iter().zip(results) {
        match r.into_inner().unwrap().unwrap() {
            Ok(o) => {
                for line in o.text.lines() {
                    let _ = writeln!(text, "{}: {line}", p.display());
                }
                code = code.max(o.code);
            }
            Err(e) => {
                let _ = writeln!(text, "{}: error: {e}", p.display());
                code = code.max(e.exit_code());
            }
        }
    }
    Ok(Outcome { text, code })
}

fn dispatch(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Check {
            model,
            file,
            common,
        } => per_file(&file, &common, &|p| {
            let t = load(p, common.kind)?;
            let m = model_of(&model, t.alphabet())?;
            Ok(Outcome::answer(
                engine(&common).check_model(&t, &m)?,
                "model",
                "not a model",
            ))
        }),
        Command::Infer {
            query,
            file,
            common,
        } => per_file(&file, &common, &|p| {
            let mut t = load(p, common.kind)?;
            let q = parse_lcirc(&query, t.alphabet_mut())?;
            Ok(Outcome::answer(
                engine(&common).infer(&t, &q)?,
                "entailed",
                "not entailed",
            ))
        }),
        Command::Sat { file, common } => per_file(&file, &common, &|p| {
            let t = load(p, common.kind)?;
            Ok(Outcome::answer(
                engine(&common).satisfiable(&t)?,
                "sat",
                "unsat",
            ))
        }),
        Command::Stats { file, common } => per_file(&file, &common, &|p| {
            Ok(Outcome::text(stats(&load(p, common.kind)?).to_string()))
        }),
        Command::Models { file, common } => {
            let t = load(&file, common.kind)?;
            let models = engine(&common).models(&t)?;
            let mut text = String::new();
            for m in &models {
                let _ = writeln!(text, "{}", braces(m, t.alphabet()));
            }
            Ok(Outcome {
                text,
                code: if models.is_empty() { 1 } else { 0 },
            })
        }
        Command::Flatten { file, common } => {
            let t = load_nat(&file, common.kind)?;
            let flat = flatten(&t)?;
            let mut text = flat.cnf.to_dimacs(&t.alphabet);
            match &flat.model {
                Some(m) => {
                    let _ = writeln!(text, "c least model {}", braces(m, &t.alphabet));
                }
                None => text.push_str("c unsatisfiable\n"),
            }
            Ok(Outcome {
                text,
                code: if flat.model.is_some() { 0 } else { 1 },
            })
        }
        Command::ToQdimacs {
            closure,
            file,
            common,
        } => {
            let (q, alpha) = match load(&file, common.kind)? {
                Theory::Lcirc {
                    formula,
                    mut alphabet,
                } => (tau(&formula, &mut alphabet), alphabet),
                Theory::Nat(t) => sigma(&t),
            };
            let closure = match closure {
                ClosureArg::Exists => Closure::Exists,
                ClosureArg::Forall => Closure::Forall,
            };
            Ok(Outcome::text(write_qdimacs(&prenex_cnf(
                &q, &alpha, closure,
            ))))
        }
        Command::SigmaStar { file, common } => {
            let t = load_nat(&file, common.kind)?;
            let s = sigma_star(&t);
            let mut text = render_formula(&s.formula, &s.alphabet);
            text.push('\n');
            text.push_str(&introduced(&s.alphabet, &s.aux));
            Ok(Outcome::text(text))
        }
        Command::EliminateFixed { file, common } => {
            Ok(Outcome::text(match load(&file, common.kind)? {
                Theory::Lcirc {
                    formula,
                    mut alphabet,
                } => {
                    let (g, aux) = eliminate_fixed_lcirc(&formula, &mut alphabet);
                    format!(
                        "{}\n{}",
                        render_formula(&g, &alphabet),
                        introduced(&alphabet, &aux)
                    )
                }
                Theory::Nat(t) => {
                    let (t2, _) = eliminate_fixed_nat(&t);
                    let new: Vec<_> = (t.alphabet.len() as u32..t2.alphabet.len() as u32).collect();
                    format!("{}{}", render_nat(&t2), introduced(&t2.alphabet, &new))
                }
            }))
        }
        Command::LowerMinmax { file, common } => {
            let t = load_nat(&file, common.kind)?;
            let l = lower_nat(&t);
            let new: Vec<_> = (t.alphabet.len() as u32..l.alphabet.len() as u32).collect();
            Ok(Outcome::text(format!(
                "{}{}",
                render_nat(&l),
                introduced(&l.alphabet, &new)
            )))
        }
        Command::Prioritize {
            levels,
            floating,
            file,
            common,
        } => {
            let (formula, alphabet) = match load(&file, common.kind.or(Some(KindArg::Lc)))? {
                Theory::Lcirc { formula, alphabet } => (formula, alphabet),
                Theory::Nat(_) => {
                    return Err(Error::semantic("prioritize expects an L_CIRC formula"))
                }
            };
            let names = |s: &str| -> Result<Vec<u32>> {
                s.split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|w| !w.is_empty())
                    .map(|w| {
                        alphabet
                            .get(w)
                            .ok_or_else(|| Error::semantic(format!("unknown atom `{w}`")))
                    })
                    .collect()
            };
            let lv = levels.split(';').map(names).collect::<Result<Vec<_>>>()?;
            let lv: Vec<_> = lv.into_iter().filter(|l| !l.is_empty()).collect();
            let pl = PriorityLevels::new(lv, names(&floating)?)?;
            let g = compile_prioritized(&formula, &pl)?;
            Ok(Outcome::text(format!(
                "{}\n",
                render_formula(&g, &alphabet)
            )))
        }
        Command::Encode {
            encoding,
            input,
            out,
        } => encode(encoding, &input, &out),
    }
}

fn encode(which: EncodingArg, input: &Path, out: &Path) -> Result<Outcome> {
    let io = |e: std::io::Error| Error::semantic(format!("i/o error: {e}"));
    let mut inputs = if input.is_dir() {
        fs::read_dir(input)
            .map_err(io)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().and_then(|e| e.to_str()) == Some("qbf"))
            .collect()
    } else {
        vec![input.to_path_buf()]
    };
    inputs.sort();
    fs::create_dir_all(out).map_err(io)?;
    let tag = match which {
        EncodingArg::Fe => "fe",
        EncodingArg::Inf => "inf",
        EncodingArg::Mc => "mc",
        EncodingArg::Xhorn => "xhorn",
    };
    let mut manifest = String::new();
    for path in inputs {
        let phi = PrenexQbf::parse(&read(&path)?)?;
        let id = path
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or("qbf")
            .to_string();
        let truth = phi.truth_per_params();
        let mut record = serde_json::json!({
            "id": id,
            "encoding": tag,
            "phi_truth": truth,
            "blocks": phi.n(),
        });
        let (file_name, body) = match which {
            EncodingArg::Fe => {
                let inst = encode_forall_exists(&phi)?;
                record["expected"] = expected_forall_exists(&phi).into();
                record["query"] = render_formula(&inst.query, &inst.alphabet).into();
                record["nd"] = inst.formula.nesting_depth().into();
                record["atoms"] = inst.alphabet.len().into();
                (
                    format!("{id}.{tag}.lc"),
                    format!("{}\n", render_formula(&inst.formula, &inst.alphabet)),
                )
            }
            EncodingArg::Inf | EncodingArg::Xhorn => {
                let inst = if which == EncodingArg::Inf {
                    encode_inference_nat(&phi)?
                } else {
                    encode_xhorn(&phi)?
                };
                record["expected"] = expected_inference(&phi).into();
                record["query"] = render_formula(&inst.query, &inst.nat.alphabet).into();
                record["nd"] = inst.nat.nesting_depth().into();
                record["atoms"] = inst.nat.alphabet.len().into();
                record["ab_atoms"] = inst.nat.alphabet.ab_atoms().len().into();
                (format!("{id}.{tag}.nat"), render_nat(&inst.nat))
            }
            EncodingArg::Mc => {
                let inst = encode_mc_nat(&phi)?;
                record["expected"] = expected_mc(&phi).into();
                record["model"] = render_model(&inst.model.true_atoms(), &inst.nat.alphabet).into();
                record["nd"] = inst.nat.nesting_depth().into();
                record["atoms"] = inst.nat.alphabet.len().into();
                record["ab_atoms"] = inst.nat.alphabet.ab_atoms().len().into();
                (format!("{id}.{tag}.nat"), render_nat(&inst.nat))
            }
        };
        fs::write(out.join(&file_name), body).map_err(io)?;
        record["theory"] = file_name.into();
        let _ = writeln!(manifest, "{record}");
    }
    fs::write(out.join(format!("manifest.{tag}.jsonl")), &manifest).map_err(io)?;
    Ok(Outcome::text(manifest))
}

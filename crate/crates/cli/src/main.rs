use std::fs;
use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ideal_lab::ideals::{self, Measure};
use ideal_lab::semigroup::{default_cap, syntactic_semigroup_size_with_cap};
use ideal_lab::*;
use serde_json::{json, Map, Value};

/// Witness streams and complexity measurements for regular ideals.
#[derive(Parser)]
#[command(name = "ideal-lab", version)]
struct Cli {
    /// Maximum number of semigroup elements before giving up.
    #[arg(long, global = true, env = "IDEAL_LAB_CAP")]
    cap: Option<usize>,

    /// Worker threads (defaults to one per core).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Write output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a witness DFA as JSON.
    Witness {
        /// regular, right, left or two_sided
        class: String,
        n: usize,
        /// Partial permutation such as `a,b,-,d`.
        #[arg(conflicts_with = "dialect_flag")]
        dialect: Option<String>,
        #[arg(long = "dialect", value_name = "DIALECT")]
        dialect_flag: Option<String>,
    },
    /// Measure one quantity of a witness or of DFA JSON files.
    Measure {
        /// complexity, semigroup, quotient_profile, atoms, atom_complexity,
        /// reversal, star, product, union, intersection, difference or
        /// symmetric_difference
        measure: String,
        /// One or two DFA JSON files; `-` reads stdin.
        files: Vec<PathBuf>,
        #[arg(long)]
        class: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        /// Dialect for the witness operands (defaults to the one the bound
        /// is stated for).
        #[arg(long)]
        dialect: Option<String>,
        /// Dialect for the second operand of a binary measure.
        #[arg(long)]
        second_dialect: Option<String>,
    },
    /// Run the verification grid for one class.
    Verify {
        class: String,
        /// Range of n for unary measures, e.g. `3..7`.
        #[arg(long)]
        n: Option<String>,
        /// Range of m and n for binary measures.
        #[arg(long)]
        mn: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Record elapsed milliseconds per check.
        #[arg(long)]
        timing: bool,
        /// Corrupt every witness: `letter:from:to`, states 1-based.
        #[arg(long, value_name = "LETTER:FROM:TO")]
        mutate: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Markdown,
}

enum Failure {
    Usage(String),
    Cap(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SemigroupCap { .. } => Failure::Cap(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|(text, code)| {
        emit(cli.out.as_ref(), &text)?;
        Ok(code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display()))),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(e.to_string())),
    }
}

fn run(cli: &Cli) -> Result<(String, u8), Failure> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(usage("--jobs must be at least 1"));
        }
        rayon_pool(jobs);
    }
    if cli.cap == Some(0) {
        return Err(usage("--cap must be at least 1"));
    }
    match &cli.command {
        Command::Witness {
            class,
            n,
            dialect,
            dialect_flag,
        } => {
            let class: StreamClass = class.parse()?;
            let spec = WitnessSpec::new(class, *n, dialect.as_deref().or(dialect_flag.as_deref()))?;
            Ok((spec.build()?.to_json_string() + "\n", 0))
        }
        Command::Measure {
            measure,
            files,
            class,
            n,
            m,
            dialect,
            second_dialect,
        } => {
            let request = MeasureRequest {
                measure,
                files,
                class: class.as_deref(),
                n: *n,
                m: *m,
                dialect: dialect.as_deref(),
                second_dialect: second_dialect.as_deref(),
                cap: cli.cap,
            };
            let value = request.run()?;
            Ok((
                serde_json::to_string_pretty(&value).expect("json") + "\n",
                0,
            ))
        }
        Command::Verify {
            class,
            n,
            mn,
            format,
            timing,
            mutate,
        } => {
            let class: IdealClass = class.parse()?;
            let mut config = VerifyConfig::for_class(class);
            if let Some(r) = n {
                config.n_range = parse_range(r)?;
            }
            if let Some(r) = mn {
                config.mn_range = Some(parse_range(r)?);
            }
            config.cap = cli.cap;
            config.jobs = cli.jobs;
            config.timing = *timing;
            let report = match mutate {
                Some(m) => {
                    let (letter, from, to) = parse_mutation(m)?;
                    let witness = move |c: IdealClass, n: usize| -> ideal_lab::Result<Dfa> {
                        let d = StreamClass::from(c).witness(n)?;
                        let l = d.letter_index(letter).ok_or(Error::UnknownLetter(letter))?;
                        d.with_transition(l, from - 1, to - 1)
                    };
                    verify_with(&config, &witness)?
                }
                None => verify(&config)?,
            };
            let text = match format {
                Format::Json => report.to_json() + "\n",
                Format::Csv => report.to_csv(),
                Format::Markdown => report.to_markdown(),
            };
            Ok((text, report.exit_code() as u8))
        }
    }
}

fn rayon_pool(jobs: usize) {
    // only the first call can configure the global pool
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build_global();
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, Failure> {
    let bad = || {
        usage(format!(
            "bad range {s:?}; expected `a..b` or a single number"
        ))
    };
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    let range = match s.split_once("..") {
        Some((a, b)) => num(a)?..=num(b.trim_start_matches('='))?,
        None => {
            let v = num(s)?;
            v..=v
        }
    };
    if range.is_empty() {
        return Err(bad());
    }
    Ok(range)
}

fn parse_mutation(s: &str) -> Result<(char, usize, usize), Failure> {
    let bad = || usage(format!("bad mutation {s:?}; expected `letter:from:to`"));
    let parts: Vec<&str> = s.split(':').collect();
    let [letter, from, to] = parts.as_slice() else {
        return Err(bad());
    };
    let mut chars = letter.chars();
    let (Some(letter), None) = (chars.next(), chars.next()) else {
        return Err(bad());
    };
    let from: usize = from.parse().map_err(|_| bad())?;
    let to: usize = to.parse().map_err(|_| bad())?;
    if from == 0 || to == 0 {
        return Err(bad());
    }
    Ok((letter, from, to))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Quantity {
    Complexity,
    Table(Measure),
}

fn parse_quantity(s: &str) -> Result<Quantity, Failure> {
    match s {
        "complexity" => Ok(Quantity::Complexity),
        "atoms" => Ok(Quantity::Table(Measure::AtomCount)),
        "profile" => Ok(Quantity::Table(Measure::QuotientProfile)),
        other => Ok(Quantity::Table(other.parse()?)),
    }
}

struct MeasureRequest<'a> {
    measure: &'a str,
    files: &'a [PathBuf],
    class: Option<&'a str>,
    n: Option<usize>,
    m: Option<usize>,
    dialect: Option<&'a str>,
    second_dialect: Option<&'a str>,
    cap: Option<usize>,
}

impl MeasureRequest<'_> {
    fn run(&self) -> Result<Value, Failure> {
        let quantity = parse_quantity(self.measure)?;
        let binary = matches!(quantity, Quantity::Table(m) if m.is_binary());
        let mut params = Map::new();
        let operands = if self.files.is_empty() {
            self.witness_operands(quantity, binary, &mut params)?
        } else {
            self.file_operands(binary, &mut params)?
        };
        let value = self.evaluate(quantity, &operands)?;
        let name = match quantity {
            Quantity::Complexity => "complexity",
            Quantity::Table(m) => m.name(),
        };
        Ok(json!({ "measure": name, "params": params, "value": value }))
    }

    fn witness_operands(
        &self,
        quantity: Quantity,
        binary: bool,
        params: &mut Map<String, Value>,
    ) -> Result<Vec<Dfa>, Failure> {
        let class_name = self
            .class
            .ok_or_else(|| usage("give DFA files or --class with --n"))?;
        let stream: StreamClass = class_name.parse()?;
        let n = self
            .n
            .ok_or_else(|| usage("--n is required with --class"))?;
        let entry = match (quantity, stream.ideal_class()) {
            (Quantity::Table(m), Some(c)) => ideals::entry(c, m).ok(),
            _ => None,
        };
        let first = self.dialect.or(entry.and_then(|e| e.dialect));
        let second = self
            .second_dialect
            .or(self.dialect)
            .or(entry.and_then(|e| e.second_dialect));
        params.insert("class".into(), json!(stream.name()));
        let build = |size: usize, dialect: Option<&str>| -> Result<Dfa, Failure> {
            let d = WitnessSpec::new(stream, size, dialect)?.build()?;
            Ok(if dialect.is_some() {
                d.sorted_alphabet()
            } else {
                d
            })
        };
        if binary {
            let m = self.m.ok_or_else(|| usage("binary measures need --m"))?;
            params.insert("m".into(), json!(m));
            params.insert("n".into(), json!(n));
            insert_opt(params, "dialect", first);
            insert_opt(params, "second_dialect", second);
            Ok(vec![build(m, first)?, build(n, second)?])
        } else {
            if self.m.is_some() {
                return Err(usage("--m only applies to binary measures"));
            }
            params.insert("n".into(), json!(n));
            insert_opt(params, "dialect", first);
            Ok(vec![build(n, first)?])
        }
    }

    fn file_operands(
        &self,
        binary: bool,
        params: &mut Map<String, Value>,
    ) -> Result<Vec<Dfa>, Failure> {
        if self.class.is_some() || self.n.is_some() || self.m.is_some() || self.dialect.is_some() {
            return Err(usage("witness flags cannot be combined with DFA files"));
        }
        let want = if binary { 2 } else { 1 };
        if self.files.len() != want {
            return Err(usage(format!(
                "{} takes {want} DFA file(s), got {}",
                self.measure,
                self.files.len()
            )));
        }
        let names: Vec<String> = self.files.iter().map(|p| p.display().to_string()).collect();
        params.insert("files".into(), json!(names));
        self.files.iter().map(read_dfa).collect()
    }

    fn evaluate(&self, quantity: Quantity, ops: &[Dfa]) -> Result<Value, Failure> {
        let d = &ops[0];
        Ok(match quantity {
            Quantity::Complexity => json!(complexity(d)),
            Quantity::Table(m) => {
                match m {
                    Measure::Semigroup => {
                        let minimal = minimize(d);
                        let cap = self
                            .cap
                            .unwrap_or_else(|| default_cap(minimal.state_count()));
                        json!(syntactic_semigroup_size_with_cap(&minimal, cap)?)
                    }
                    Measure::QuotientProfile => json!(quotient_complexities(d)),
                    Measure::AtomCount => json!(enumerate_atoms(d)?.len()),
                    Measure::AtomComplexity => {
                        let atoms: Vec<Value> = enumerate_atoms(d)?
                        .iter()
                        .map(|a| json!({ "S": a.subset.to_one_based(), "complexity": a.complexity }))
                        .collect();
                        Value::Array(atoms)
                    }
                    Measure::Reversal => json!(reverse(d).state_count()),
                    Measure::Star => json!(star_generic(d).state_count()),
                    Measure::Product => json!(concat_epsilon(d, &ops[1])?.state_count()),
                    other => {
                        let op = other.boolean().expect("remaining measures are boolean");
                        json!(boolean_product(d, &ops[1], op)?.state_count())
                    }
                }
            }
        })
    }
}

fn insert_opt(params: &mut Map<String, Value>, key: &str, v: Option<&str>) {
    if let Some(v) = v {
        params.insert(key.into(), json!(v));
    }
}

fn read_dfa(path: &PathBuf) -> Result<Dfa, Failure> {
    let text = if path.as_os_str() == "-" {
        io::read_to_string(io::stdin()).map_err(|e| usage(format!("stdin: {e}")))?
    } else {
        fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?
    };
    Dfa::from_json_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

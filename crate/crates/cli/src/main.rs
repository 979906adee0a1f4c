//! `subseq`: batch front end for the WF_N2 proof toolkit.
//!
//! Exit codes: 0 success / provable, 1 not provable / countermodel found /
//! rejected input proof, 2 input error, 3 internal self-check failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use subseq::embedding::{companion_check, translate_sequent};
use subseq::hilbert::{check_hilbert, hilbert_to_sequent, sequent_to_hilbert, BridgeError};
use subseq::kernel::{check_derivation, check_derivation_with, CutPolicy};
use subseq::search::{prove, SearchError};
use subseq::semantics::{countermodel, CountermodelResult};
use subseq::text::{
    decode_hilbert, decode_proof, encode_hilbert, encode_proof, parse_formula, parse_sequent,
    print_derivation, print_sequent_compact, HilbertDocument, ProofFileError,
};
use subseq::transform::{eliminate_cut, CutInstance, TransformError};
use subseq::{Calculus, Derivation, Sequent};

#[derive(Parser)]
#[command(name = "subseq", version, about = "Sequent calculi, cut elimination and countermodels for WF_N2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum CalcArg {
    Gwfn2,
    Gwfs,
    Mnec,
}

impl From<CalcArg> for Calculus {
    fn from(c: CalcArg) -> Calculus {
        match c {
            CalcArg::Gwfn2 => Calculus::Gwf,
            CalcArg::Gwfs => Calculus::GwfSingle,
            CalcArg::Mnec => Calculus::MNec,
        }
    }
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a sequent and print a proof.
    Prove {
        #[arg(long, value_enum, default_value = "gwfn2")]
        calculus: CalcArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        sequent: String,
    },
    /// Check a proof file.
    Check {
        file: PathBuf,
        /// Require the proof to be in this calculus.
        #[arg(long, value_enum)]
        calculus: Option<CalcArg>,
    },
    /// Eliminate a single cut between two GWF_N2 proofs.
    Cutelim {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        cut: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the box translation of a sequent.
    Translate { sequent: String },
    /// Compare GWF_N2 provability with G3M_Nec provability of the translation.
    Companion { sequent: String },
    /// Search small superset-closed neighborhood models for a countermodel.
    Countermodel {
        #[arg(long, default_value_t = 3)]
        max_worlds: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        sequent: String,
    },
    /// Hilbert-style proofs in WF_N2.
    Hilbert {
        #[command(subcommand)]
        command: HilbertCommand,
    },
}

#[derive(Subcommand)]
enum HilbertCommand {
    /// Check a Hilbert proof file.
    Check { file: PathBuf },
    /// Compile a GWF_N2 proof file into a Hilbert proof.
    FromSequent { file: PathBuf },
    /// Turn a Hilbert proof into a GWF_N2 proof of the given sequent.
    ToSequent {
        file: PathBuf,
        #[arg(long)]
        sequent: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

/// An unsuccessful outcome: exit code plus the message for stderr.
struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl ToString) -> Failure {
    Failure {
        code,
        message: message.to_string(),
    }
}

fn input(message: impl ToString) -> Failure {
    fail(2, message)
}

type Outcome = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn sequent(text: &str) -> Result<Sequent, Failure> {
    parse_sequent(text).map_err(input)
}

fn search_failure(e: SearchError) -> Failure {
    match e {
        SearchError::Invariant(_) => fail(3, e),
        _ => input(e),
    }
}

fn proof_file(path: &Path) -> Result<Derivation, Failure> {
    decode_proof(&read(path)?).map_err(|e| match e {
        ProofFileError::Rejected(_) => fail(1, format!("{}: {e}", path.display())),
        _ => input(format!("{}: {e}", path.display())),
    })
}

/// Re-validates a derivation produced by the library before it is printed.
fn self_check(d: &Derivation, calculus: Calculus) -> Result<(), Failure> {
    check_derivation(d, calculus)
        .map(|_| ())
        .map_err(|e| fail(3, format!("self-check failed: {e}")))
}

fn emit(d: &Derivation, format: Format) {
    match format {
        Format::Text => print!("{}", print_derivation(d)),
        Format::Json => println!("{}", encode_proof(d)),
    }
}

fn cmd_prove(calculus: Calculus, format: Format, text: &str) -> Outcome {
    let s = sequent(text)?;
    let outcome = prove(&s, calculus).map_err(search_failure)?;
    match outcome.into_derivation() {
        Some(d) => {
            self_check(&d, calculus)?;
            emit(&d, format);
            Ok(0)
        }
        None => {
            println!("not provable in {calculus}: {s}");
            Ok(1)
        }
    }
}

fn cmd_check(path: &Path, calculus: Option<Calculus>) -> Outcome {
    let d = proof_file(path)?;
    let found = d.rule.calculus();
    if let Some(want) = calculus {
        if want != found {
            return Err(fail(1, format!("proof is in {found}, not {want}")));
        }
    }
    let height = check_derivation_with(&d, found, CutPolicy::Allow).map_err(|e| fail(1, e))?;
    let cuts = if d.is_cut_free() { "cut-free" } else { "with cuts" };
    println!("ok: {found} proof of {}, height {height}, {cuts}", d.conclusion);
    Ok(0)
}

fn cmd_cutelim(left: &Path, right: &Path, cut: &str, format: Format) -> Outcome {
    let (l, r) = (proof_file(left)?, proof_file(right)?);
    let f = parse_formula(cut).map_err(input)?;
    let instance = CutInstance::new(l, r, f).map_err(|e| fail(1, e))?;
    let d = eliminate_cut(&instance).map_err(|e| match e {
        TransformError::Internal(_) => fail(3, e),
        _ => fail(1, e),
    })?;
    self_check(&d, Calculus::Gwf)?;
    if !d.conclusion.multiset_eq(&instance.conclusion()) {
        return Err(fail(3, "self-check failed: cut elimination changed the endsequent"));
    }
    emit(&d, format);
    Ok(0)
}

fn cmd_translate(text: &str) -> Outcome {
    let t = translate_sequent(&sequent(text)?).map_err(input)?;
    println!("{}", print_sequent_compact(&t.image));
    Ok(0)
}

fn cmd_companion(text: &str) -> Outcome {
    let s = sequent(text)?;
    let (direct, modal) = companion_check(&s.antecedent, &s.succedent).map_err(input)?;
    let word = |b| if b { "provable" } else { "not provable" };
    println!("GWF_N2: {}", word(direct));
    println!("G3M_Nec (translated): {}", word(modal));
    if direct != modal {
        return Err(fail(3, "the two deciders disagree"));
    }
    Ok(if direct { 0 } else { 1 })
}

fn cmd_countermodel(max_worlds: usize, format: Format, text: &str) -> Outcome {
    let s = sequent(text)?;
    match countermodel(&s, max_worlds).map_err(input)? {
        CountermodelResult::Found { model, world } => {
            // Re-evaluate before reporting.
            if model.sequent_valid(&s).map_err(|e| fail(3, e))? {
                return Err(fail(3, "self-check failed: reported model validates the sequent"));
            }
            match format {
                Format::Text => {
                    print!("{model}");
                    println!("refuted at world {world}");
                }
                Format::Json => println!("{}", model.to_json()),
            }
            Ok(1)
        }
        CountermodelResult::Exhausted => {
            println!("no countermodel with at most {max_worlds} worlds");
            Ok(0)
        }
    }
}

fn hilbert_file(path: &Path) -> Result<HilbertDocument, Failure> {
    decode_hilbert(&read(path)?).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn bridge_failure(e: BridgeError) -> Failure {
    match e {
        BridgeError::Internal(_) | BridgeError::Transform(_) => fail(3, e),
        BridgeError::EmptySuccedent | BridgeError::NotFrm(_) => input(e),
        _ => fail(1, e),
    }
}

fn cmd_hilbert(command: HilbertCommand) -> Outcome {
    match command {
        HilbertCommand::Check { file } => {
            let doc = hilbert_file(&file)?;
            let f = check_hilbert(&doc.proof, &doc.assumptions).map_err(|e| fail(1, e))?;
            println!("ok: {} line(s) proving {f}", doc.proof.lines.len());
            Ok(0)
        }
        HilbertCommand::FromSequent { file } => {
            let d = proof_file(&file)?;
            if d.rule.calculus() != Calculus::Gwf {
                return Err(input(format!("expected a GWF_N2 proof, found {}", d.rule.calculus())));
            }
            let proof = sequent_to_hilbert(&d).map_err(bridge_failure)?;
            check_hilbert(&proof, &[]).map_err(|e| fail(3, format!("self-check failed: {e}")))?;
            print!(
                "{}",
                encode_hilbert(&HilbertDocument {
                    assumptions: vec![],
                    proof,
                })
            );
            Ok(0)
        }
        HilbertCommand::ToSequent { file, sequent: text, format } => {
            let doc = hilbert_file(&file)?;
            if !doc.assumptions.is_empty() {
                return Err(input("only assumption-free Hilbert proofs can be converted"));
            }
            let s = sequent(&text)?;
            let d = hilbert_to_sequent(&doc.proof, &s).map_err(bridge_failure)?;
            check_derivation_with(&d, Calculus::Gwf, CutPolicy::Allow)
                .map_err(|e| fail(3, format!("self-check failed: {e}")))?;
            emit(&d, format);
            Ok(0)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Prove {
            calculus,
            format,
            sequent,
        } => cmd_prove(calculus.into(), format, &sequent),
        Command::Check { file, calculus } => cmd_check(&file, calculus.map(Into::into)),
        Command::Cutelim {
            left,
            right,
            cut,
            format,
        } => cmd_cutelim(&left, &right, &cut, format),
        Command::Translate { sequent } => cmd_translate(&sequent),
        Command::Companion { sequent } => cmd_companion(&sequent),
        Command::Countermodel {
            max_worlds,
            format,
            sequent,
        } => cmd_countermodel(max_worlds, format, &sequent),
        Command::Hilbert { command } => cmd_hilbert(command),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

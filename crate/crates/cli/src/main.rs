use std::io::{self, BufRead, IsTerminal, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use opalg_core::expr::{evaluate_str, print, ExprError, Format};
use opalg_core::verify::{run, Suite, SuiteConfig};
use opalg_core::Polynomial;

#[derive(Parser)]
#[command(
    name = "opalg",
    version,
    about = "Exact algebra of the canonical pair (q, p)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one expression and print the result.
    Eval {
        expr: String,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Run identity verification suites.
    Verify {
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..))]
        max_degree: u32,
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u32).range(1..))]
        cases: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Interactive read-eval-print loop.
    Repl,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Latex,
    Json,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Format {
        match f {
            OutputFormat::Text => Format::Text,
            OutputFormat::Latex => Format::Latex,
            OutputFormat::Json => Format::Json,
        }
    }
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Eval { expr, format } => cmd_eval(&expr, format.into()),
        Command::Verify {
            suite,
            max_degree,
            cases,
            seed,
            format,
        } => cmd_verify(
            SuiteConfig {
                suite,
                max_degree,
                cases,
                seed,
            },
            format.into(),
        ),
        Command::Repl => cmd_repl(),
    }
}

fn cmd_eval(input: &str, format: Format) -> ExitCode {
    match render(input, format) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

/// Result text; Weyl results in text or LaTeX get a second line with the
/// expansion into words.
fn render(input: &str, format: Format) -> Result<String, String> {
    let value = evaluate_str(input).map_err(|e| describe_error(input, &e))?;
    let mut out = print(&value, format);
    if let (Polynomial::Weyl(w), Format::Text | Format::Latex) = (&value, format) {
        let expanded = print(&Polynomial::Free(w.expand()), format);
        if expanded != out {
            out.push_str("\n= ");
            out.push_str(&expanded);
        }
    }
    Ok(out)
}

fn describe_error(input: &str, e: &ExprError) -> String {
    let span = match e {
        ExprError::Parse(p) => p.span,
        ExprError::Eval(v) => v.span,
    };
    let mut out = format!("error: {e}");
    if let Some(line) = input.lines().nth(span.line.saturating_sub(1)) {
        let pad = line.chars().take(span.column.saturating_sub(1)).count();
        out.push_str(&format!("\n  {line}\n  {}^", " ".repeat(pad)));
    }
    out
}

fn cmd_verify(config: SuiteConfig, format: Format) -> ExitCode {
    if let Err(e) = config.validate() {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    let report = run(&config);
    let text = report.render(format);
    print!("{text}");
    if !text.ends_with('\n') {
        println!();
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILURE)
    }
}

const HELP: &str = "\
expressions: q p rho drho_q drho_p hbar i, rationals like -3/4
operators:   + - * (or juxtaposition) o ^   calls: S pb comm dq dp normal
directives:  :format text|latex|json   :help   :quit";

fn cmd_repl() -> ExitCode {
    let stdin = io::stdin();
    let interactive = stdin.is_terminal();
    let mut format = Format::Text;
    let mut stdout = io::stdout();
    loop {
        if interactive {
            print!("opalg> ");
            let _ = stdout.flush();
        }
        let mut line = String::new();
        match stdin.lock().read_line(&mut line) {
            Ok(0) => break,
            Ok(_) => {}
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_FAILURE);
            }
        }
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(directive) = line.strip_prefix(':') {
            let mut parts = directive.split_whitespace();
            match (parts.next(), parts.next()) {
                (Some("quit" | "q"), None) => break,
                (Some("help"), None) => println!("{HELP}"),
                (Some("format"), Some(f)) => match f.parse() {
                    Ok(f) => format = f,
                    Err(e) => eprintln!("error: {e}"),
                },
                _ => eprintln!("error: unknown directive `{line}` (try :help)"),
            }
            continue;
        }
        match render(line, format) {
            Ok(out) => println!("{out}"),
            Err(e) => eprintln!("{e}"),
        }
    }
    ExitCode::SUCCESS
}

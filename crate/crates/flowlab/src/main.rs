use std::io::{self, BufRead, IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use flowlab::shell::{is_blank, parse, parse_line, CatFixture, Command, Output, Session};
use flowlab::FlowError;

#[derive(Parser)]
#[command(
    name = "flowlab",
    version,
    about = "Flow theory term engine and model checker"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Option<Cmd>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Interactive command loop (the default).
    Repl,
    /// Run a script line by line.
    Run {
        script: PathBuf,
        /// Continue past failing lines.
        #[arg(long)]
        keep_going: bool,
    },
    /// Bounded model checks.
    Check {
        #[command(subcommand)]
        what: CheckCmd,
    },
    /// Export the rectangle diagram of an expression.
    Diagram {
        expr: String,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
}

#[derive(Subcommand)]
enum CheckCmd {
    /// Translated ZF axioms over generated universes.
    Zf {
        #[arg(long, default_value_t = 2)]
        rank: u32,
        #[arg(long, default_value_t = 50)]
        seeds: u64,
    },
    /// K axioms over a category fixture: `worked` or `set`.
    Cat { fixture: String },
}

fn seed_from_env() -> Result<u64, FlowError> {
    match std::env::var("FLOWLAB_SEED") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| FlowError::Usage(format!("FLOWLAB_SEED must be an integer, got '{s}'"))),
        Err(_) => Ok(0),
    }
}

fn code_for(e: &FlowError) -> u8 {
    if e.is_usage() {
        2
    } else {
        1
    }
}

fn report(e: &FlowError) {
    eprintln!("error[{}]: {e}", e.code());
}

fn finish(r: Result<Output, FlowError>) -> u8 {
    match r {
        Ok(out) => {
            println!("{}", out.text);
            u8::from(out.failed)
        }
        Err(e) => {
            report(&e);
            code_for(&e)
        }
    }
}

fn repl(session: &mut Session) -> u8 {
    let stdin = io::stdin();
    let interactive = stdin.is_terminal();
    let mut status = 0;
    let mut line = String::new();
    loop {
        if interactive {
            print!("flowlab> ");
            let _ = io::stdout().flush();
        }
        line.clear();
        match stdin.lock().read_line(&mut line) {
            Ok(0) => break,
            Ok(_) => {}
            Err(e) => {
                report(&e.into());
                return 1;
            }
        }
        if is_blank(&line) {
            continue;
        }
        if matches!(line.trim(), "quit" | "exit") {
            break;
        }
        let r = parse(line.trim_end()).and_then(|c| session.execute(&c));
        status = status.max(finish(r));
    }
    status
}

fn run_script(session: &mut Session, path: &Path, keep_going: bool) -> u8 {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            report(&e.into());
            return 1;
        }
    };
    let mut status = 0;
    for (i, line) in text.lines().enumerate() {
        if is_blank(line) {
            continue;
        }
        let r = parse_line(line, i + 1).and_then(|c| session.execute(&c));
        let errored = r.is_err();
        status = status.max(finish(r));
        if errored && !keep_going {
            break;
        }
    }
    status
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = match seed_from_env() {
        Ok(s) => s,
        Err(e) => {
            report(&e);
            return ExitCode::from(2);
        }
    };
    let mut session = Session::with_seed(seed);
    let code = match cli.cmd.unwrap_or(Cmd::Repl) {
        Cmd::Repl => repl(&mut session),
        Cmd::Run { script, keep_going } => run_script(&mut session, &script, keep_going),
        Cmd::Check {
            what: CheckCmd::Zf { rank, seeds },
        } => finish(session.execute(&Command::CheckZf { rank, seeds })),
        Cmd::Check {
            what: CheckCmd::Cat { fixture },
        } => {
            let f = match fixture.as_str() {
                "worked" => Ok(CatFixture::Worked),
                "set" => Ok(CatFixture::Set),
                other => Err(FlowError::Usage(format!("unknown category fixture '{other}'"))),
            };
            finish(f.and_then(|f| session.execute(&Command::CheckCat(f))))
        }
        Cmd::Diagram { expr, output } => {
            let r = parse(&expr).and_then(|c| match c {
                Command::Query(e) => session.execute(&Command::Diagram(e, output.display().to_string())),
                _ => Err(FlowError::Usage("diagram takes an expression".into())),
            });
            finish(r)
        }
    };
    ExitCode::from(code)
}

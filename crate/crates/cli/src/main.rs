use clap::Parser;
use pencilforge_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            eprint!("{}", out.stderr);
            0
        }
        Err((e, out)) => {
            print!("{}", out.stdout);
            eprint!("{}", out.stderr);
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}

use std::io::Write;

fn main() {
    let outcome = truecon_cli::run_command(std::env::args_os());
    let stream = if outcome.code == 2 { std::io::stderr().write_all(outcome.output.as_bytes()) } else { std::io::stdout().write_all(outcome.output.as_bytes()) };
    if stream.is_err() {
        std::process::exit(2);
    }
    std::process::exit(outcome.code);
}

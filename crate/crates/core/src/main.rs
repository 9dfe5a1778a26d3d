use std::io::Write;

fn main() {
    let (status, out, err) = combialg::cli::main_with_args(std::env::args_os());
    print!("{out}");
    eprint!("{err}");
    let _ = std::io::stdout().flush();
    std::process::exit(status);
}

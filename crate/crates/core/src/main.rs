use std::io::IsTerminal;

fn main() {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let is_tty = stderr.is_terminal();
    let code = cookmodel::cli::run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock(), is_tty);
    std::process::exit(code);
}

use std::io;

fn main() {
    let code = temporal_motifs::cli::main_with_args(std::env::args_os(), &mut io::stdout(), &mut io::stderr());
    std::process::exit(code);
}

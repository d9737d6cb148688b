fn main() {
    std::process::exit(tourneylab::cli::main_with_args(std::env::args_os()));
}

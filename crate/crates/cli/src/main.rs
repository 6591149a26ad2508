fn main() {
    std::process::exit(mollify_cli::main_with_args(std::env::args_os().collect()));
}

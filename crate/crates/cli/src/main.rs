fn main() {
    std::process::exit(bubbledyn_cli::main_with_args(std::env::args_os()));
}

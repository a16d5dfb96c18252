fn main() {
    std::process::exit(bfl_cli::main_with_args(std::env::args_os()));
}

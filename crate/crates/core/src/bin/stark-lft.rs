fn main() {
    std::process::exit(stark_lft::cli::main_with_args(std::env::args_os()));
}

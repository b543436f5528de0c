fn main() {
    std::process::exit(satake::cli::main_with_args(std::env::args_os()));
}

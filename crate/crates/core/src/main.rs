fn main() {
    std::process::exit(irpolar::cli::main_with_args(std::env::args_os()));
}

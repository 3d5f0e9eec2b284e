fn main() {
    std::process::exit(eqehrhart::cli::run(std::env::args_os()));
}

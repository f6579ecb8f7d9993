fn main() {
    std::process::exit(tukey::cli::run(std::env::args_os()));
}

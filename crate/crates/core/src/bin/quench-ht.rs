fn main() {
    std::process::exit(quench_ht::cli::run(std::env::args_os()));
}

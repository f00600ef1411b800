fn main() {
    std::process::exit(heegner_pi::cli::run(std::env::args_os()));
}

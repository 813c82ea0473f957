fn main() {
    std::process::exit(satkit_cli::run(std::env::args_os()));
}

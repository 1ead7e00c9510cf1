fn main() {
    std::process::exit(qball::cli::run(std::env::args_os()));
}

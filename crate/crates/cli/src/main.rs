fn main() {
    env_logger::init();
    std::process::exit(hendecagon_cli::run(std::env::args_os()));
}

use clap::Parser;

fn main() {
    let cli = match embedlimits_cli::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { embedlimits_cli::exit::PARSE } else { embedlimits_cli::exit::SUCCESS };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    std::process::exit(embedlimits_cli::main_with(cli));
}

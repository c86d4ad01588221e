import json
import pytest
from pyhmt.cli import main, build_parser, EXIT_PASS, EXIT_CONFIG


class TestParser:
    def test_no_command(self, capsys):
        assert main([]) == EXIT_CONFIG

    def test_witness_needs_p(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(['witness', '--theorem', 'bohr-i'])

    def test_flags_default_to_none(self):
        args = build_parser().parse_args(['verify'])
        assert args.trials is None and args.seed is None and args.theorem is None


class TestVerify:
    def test_report(self, tmp_path, capsys):
        path = tmp_path / 'report.json'
        code = main(['verify', '--theorem', 'amqm', '--trials', '5', '--seed', '1', '--quiet',
                     '--report', str(path)])
        assert code == EXIT_PASS
        report = json.loads(path.read_text())
        assert report['pass'] is True
        assert report['config']['seed'] == 1 and report['config']['theorems'] == ['amqm']
        assert report['per_theorem'][0]['trials'] == 5
        assert 'PASS' in capsys.readouterr().out

    def test_config_file(self, tmp_path):
        config, path = tmp_path / 'config.json', tmp_path / 'report.json'
        config.write_text(json.dumps({'theorem': 'prvi,l2', 'trials': 2, 'seed': 3}))
        code = main(['verify', '--config', str(config), '--trials', '3', '--quiet', '--report', str(path)])
        assert code == EXIT_PASS
        report = json.loads(path.read_text())
        assert report['config']['trials'] == 3 and report['config']['seed'] == 3
        assert [item['id'] for item in report['per_theorem']] == ['prvi', 'l2']

    def test_trials_csv(self, tmp_path):
        path = tmp_path / 'trials.csv'
        assert main(['verify', '--theorem', 'bohr2', '--trials', '2', '--quiet', '--trials-csv', str(path)]) == 0
        assert path.read_text().startswith('theorem,trial,seed,config')

    def test_replay(self, capsys):
        code = main(['verify', '--theorem', 'bohrn', '--replay', '17', '--quiet'])
        out = capsys.readouterr().out
        assert code == EXIT_PASS
        assert out.startswith('bohrn ') and 'loewner_slack' in out

    @pytest.mark.parametrize('argv', [['verify', '--theorem', 'nope'],
                                      ['verify', '--trials', '0'],
                                      ['verify', '--dims', '1..99'],
                                      ['verify', '--blocks', '2+x'],
                                      ['verify', '--replay', '3'],
                                      ['verify', '--config', 'no-such-file.json']])
    def test_config_errors(self, argv, capsys):
        assert main(argv) == EXIT_CONFIG
        assert 'error:' in capsys.readouterr().err


class TestWitness:
    @pytest.mark.parametrize('p', ['2.5', '3', '4', '10'])
    def test_found_above_two(self, capsys, p):
        code = main(['witness', '--theorem', 'bohr-i', '--p', p, '--seed', '7', '--quiet'])
        output = json.loads(capsys.readouterr().out)
        assert code == EXIT_PASS
        assert output['found'] and output['expected']
        assert output['q'] == pytest.approx(float(p) / (float(p) - 1))
        assert output['violation'] == pytest.approx(output['predicted'], rel=1e-8)

    def test_none_at_two(self, capsys):
        code = main(['witness', '--p', '2', '--budget', '20'])
        output = json.loads(capsys.readouterr().out)
        assert code == EXIT_PASS
        assert not output['found'] and not output['expected']

    def test_reverse_form_above_two(self, capsys):
        # the reversed form holds for p > 2
        code = main(['witness', '--theorem', 'bohr-ii', '--p', '3', '--budget', '5'])
        output = json.loads(capsys.readouterr().out)
        assert not output['found'] and not output['expected']
        assert code == EXIT_PASS

    def test_report(self, tmp_path, capsys):
        path = tmp_path / 'witness.json'
        main(['witness', '--theorem', 'bohr-q', '--p', '1.5', '--blocks', '2', '--report', str(path)])
        text = path.read_text(encoding='utf-8')
        assert text == capsys.readouterr().out and text.endswith('}\n')
        output = json.loads(text)
        assert output['found'] and output['space'] == 'DirectSum(2; A=2)'
        assert len(output['x']) == 4 and len(output['x'][0]) == 2

    def test_errors(self, capsys):
        assert main(['witness', '--theorem', 'bohrn', '--p', '3']) == EXIT_CONFIG
        assert main(['witness', '--p', '1.01']) == EXIT_CONFIG


class TestOther:
    def test_axioms(self, capsys):
        assert main(['axioms', '--trials', '5', '--quiet']) == EXIT_PASS
        assert 'PASS' in capsys.readouterr().out

    def test_demo(self, capsys):
        assert main(['demo']) == EXIT_PASS
        assert 'parallelogram' in capsys.readouterr().out

    def test_demo_at_two(self, capsys):
        assert main(['demo', '--p', '2']) == EXIT_PASS

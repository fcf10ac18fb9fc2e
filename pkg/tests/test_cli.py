import json

import pytest
import numpy as np
import sigworks as sw

from sigworks.cli import RunConfig, ResultsTable, reproduce, main
from sigworks.conformance import load_model
from sigworks.conformance import ConformanceModel, score_batch
from sigworks.metrics import ScoredDataset, EcdfTable, read_scores, roc_auc


@pytest.fixture
def corpus_file(tmp_path):
    rng = np.random.default_rng(0)
    streams = [sw.Stream(rng.normal(size=(6, 2)), id=f"c{i}", label='normal')
               for i in range(30)]

    filepath = tmp_path / 'corpus.jsonl'
    sw.write_streams(filepath, streams)
    return filepath


@pytest.fixture
def pendigits_dir(tmp_path):
    rng = np.random.default_rng(1)

    def instances(digits):
        lines = []
        for digit in digits:
            lines += [f'.SEGMENT DIGIT ? ? "{digit}"', '.PEN_DOWN']
            lines += [f"{x:.0f} {y:.0f}" for x, y in
                      rng.integers(0, 500, size=(8, 2))]
            lines += ['.PEN_UP']
        return '\n'.join(lines) + '\n'

    folder = tmp_path / 'pendigits'
    folder.mkdir()
    (folder / 'pendigits-orig.tra').write_text(instances('33337777'))
    (folder / 'pendigits-orig.tes').write_text(instances('3375'))
    return folder


@pytest.fixture
def ucr_files(tmp_path):
    rng = np.random.default_rng(2)

    def rows(labels):
        return ''.join(
            f"{label}\t" + '\t'.join(f"{v:.6f}" for v in rng.normal(size=6))
            + '\n' for label in labels
        )

    train = tmp_path / 'Toy_TRAIN.tsv'
    train.write_text(rows('1111112'))
    test = tmp_path / 'Toy_TEST.tsv'
    test.write_text(rows('1111222'))
    return [train, test]


def test_fit_and_score(tmp_path, corpus_file, capsys):

    model_file = tmp_path / 'model.json'
    code = main(['fit', str(corpus_file), '-o', str(model_file),
                 '--order', '2'])
    assert code == 0
    assert 'feature_dim=7' in capsys.readouterr().out

    model = load_model(model_file)
    assert model.pipeline_meta['order'] == 2
    assert model.pipeline_meta['stream_dim'] == 2

    document = json.loads(model_file.read_text())
    assert document['run_config']['order'] == 2

    again = tmp_path / 'again.json'
    assert main(['fit', str(corpus_file), '-o', str(again),
                 '--order', '2']) == 0
    assert again.read_bytes() == model_file.read_bytes()

    # corpus members score exactly 0
    scores = tmp_path / 'scores.csv'
    assert main(['score', str(model_file), str(corpus_file),
                 '-o', str(scores)]) == 0

    table = read_scores(scores)
    assert table.id.tolist() == [f"c{i}" for i in range(30)]
    assert set(table.label) == {'normal'}
    assert np.all(table.scores == 0.)


def test_fit_with_transforms(tmp_path, corpus_file):

    model_file = tmp_path / 'model.json'
    code = main(['fit', str(corpus_file), '-o', str(model_file),
                 '--order', '2', '--transforms', 'lead-lag', 'time',
                 '--normalization', 'corpus'])
    assert code == 0

    meta = load_model(model_file).pipeline_meta
    assert meta['transforms'] == ['time', 'lead-lag']
    assert meta['normalization']['mode'] == 'corpus'


def test_score_edge_cases(tmp_path, corpus_file, capsys):

    model_file = tmp_path / 'model.json'
    assert main(['fit', str(corpus_file), '-o', str(model_file),
                 '--order', '2']) == 0

    empty = tmp_path / 'empty.jsonl'
    empty.write_text('')

    scores = tmp_path / 'scores.csv'
    assert main(['score', str(model_file), str(empty),
                 '-o', str(scores)]) == 0
    assert scores.read_text() == 'id,score,label\n'

    # ids fall back to positions
    unnamed = tmp_path / 'unnamed.jsonl'
    sw.write_streams(unnamed, [sw.Stream([[0., 0.], [1., 1.]])])
    assert main(['score', str(model_file), str(unnamed),
                 '-o', str(scores)]) == 0
    assert read_scores(scores).id.tolist() == ['0']

    wrong_dim = tmp_path / 'wrong.jsonl'
    sw.write_streams(wrong_dim, [sw.Stream(np.zeros((3, 3)))])

    capsys.readouterr()
    assert main(['score', str(model_file), str(wrong_dim),
                 '-o', str(scores)]) == 1
    assert 'sigworks: error:' in capsys.readouterr().err


def test_data_errors(tmp_path, capsys):

    tiny = tmp_path / 'tiny.jsonl'
    sw.write_streams(tiny, [sw.Stream([[0., 1.]])])

    assert main(['fit', str(tiny), '-o', str(tmp_path / 'm.json')]) == 1

    missing = tmp_path / 'missing.jsonl'
    assert main(['fit', str(missing), '-o', str(tmp_path / 'm.json')]) == 1

    bad_model = tmp_path / 'bad.json'
    bad_model.write_text('{}')
    assert main(['score', str(bad_model), str(tiny),
                 '-o', str(tmp_path / 's.csv')]) == 1

    assert 'not a sigworks model file' in capsys.readouterr().err


def test_usage_errors(tmp_path, corpus_file):

    with pytest.raises(SystemExit) as e:
        _ = main(['prepare', 'fake', '-o', str(tmp_path)])
    assert e.value.code == 2

    with pytest.raises(SystemExit) as e:
        _ = main(['fit', str(corpus_file)])
    assert e.value.code == 2

    # invalid values are configuration errors
    code = main(['fit', str(corpus_file), '-o', str(tmp_path / 'm.json'),
                 '--order', '0'])
    assert code == 2

    config = tmp_path / 'config.yaml'
    config.write_text('fake_key: 1\n')
    code = main(['fit', str(corpus_file), '-o', str(tmp_path / 'm.json'),
                 '--config', str(config)])
    assert code == 2

    assert main(['prepare', 'ucr', '-o', str(tmp_path / 'out')]) == 2


def test_config_file(tmp_path, corpus_file):

    config = tmp_path / 'config.yaml'
    config.write_text('order: 1\ntransforms: [time]\nspectral_cutoff: 1e-9\n')

    model_file = tmp_path / 'model.json'
    assert main(['fit', str(corpus_file), '-o', str(model_file),
                 '--config', str(config)]) == 0

    model = load_model(model_file)
    assert model.pipeline_meta['order'] == 1
    assert model.pipeline_meta['transforms'] == ['time']
    assert model.spectral_cutoff == 1e-9

    # flags override the file
    assert main(['fit', str(corpus_file), '-o', str(model_file),
                 '--config', str(config), '--order', '2']) == 0
    assert load_model(model_file).pipeline_meta['order'] == 2


def test_calibrate(tmp_path, corpus_file, capsys):

    model_file = tmp_path / 'model.json'
    assert main(['fit', str(corpus_file), '-o', str(model_file),
                 '--order', '1']) == 0

    calibrated = tmp_path / 'calibrated.json'
    assert main(['calibrate', str(model_file), '-o', str(calibrated),
                 '--epsilon', '0.1', '--seed', '4']) == 0
    assert 'threshold=' in capsys.readouterr().out

    assert load_model(model_file).calibration is None

    calibration = load_model(calibrated).calibration
    assert calibration.epsilon == 0.1 and calibration.seed == 4
    assert calibration.n_fit == 15 and calibration.n_held_out == 15

    assert main(['calibrate', str(model_file)]) == 0
    assert load_model(model_file).calibration.epsilon == 0.05

    assert main(['calibrate', str(model_file), '--epsilon', '0']) == 2


def test_eval(tmp_path, capsys):

    normal, anomaly = tmp_path / 'normal.csv', tmp_path / 'anomaly.csv'
    sw.metrics.write_scores(normal, ['a', 'b'], [0., 1.])
    sw.metrics.write_scores(anomaly, ['c', 'd'], [2., np.inf])

    assert main(['eval', str(normal), str(anomaly), '--bootstrap', '10']) == 0
    out = capsys.readouterr().out
    assert out.startswith('auc=1.000000 se=0.000000')
    assert 'n_normal=2, n_anomaly=2' in out

    assert main(['eval', str(anomaly), str(normal), '--bootstrap', '10']) == 0
    assert capsys.readouterr().out.startswith('auc=0.000000')

    prefix = tmp_path / 'ecdf'
    assert main(['eval', str(normal), str(anomaly), '--bootstrap', '10',
                 '--metric', 'balanced-accuracy', '--ecdf', str(prefix)]) == 0

    out = capsys.readouterr().out
    assert out.startswith('balanced-accuracy=1.000000')
    assert 'threshold=1.5' in out

    table = sw.utils.RichTable.from_csv(f"{prefix}-anomaly.csv")
    assert table.value.tolist() == [2., np.inf]
    assert table.fraction.tolist() == [0.5, 1.]

    empty = tmp_path / 'empty.csv'
    empty.write_text('id,score,label\n')
    assert main(['eval', str(normal), str(empty)]) == 1
    assert main(['eval', str(normal), str(tmp_path / 'none.csv')]) == 1


def test_prepare_pendigits(tmp_path, pendigits_dir):

    out = tmp_path / 'out'
    assert main(['prepare', 'pendigits', str(pendigits_dir),
                 '-o', str(out)]) == 0

    assert len(sw.read_streams(out / 'train.jsonl')) == 8
    assert len(sw.read_streams(out / 'test.jsonl')) == 4

    manifest = json.loads((out / 'manifest.json').read_text())
    assert manifest['dataset'] == 'pendigits'
    assert manifest['instances'] == 12
    assert manifest['per_class'] == {'3': 6, '5': 1, '7': 5}
    assert manifest['config']['seed'] == 0


def test_prepare_ucr(tmp_path, ucr_files):

    out = tmp_path / 'out'
    code = main(['prepare', 'ucr', *map(str, ucr_files), '-o', str(out),
                 '--anomaly-rate', '0.1'])
    assert code == 0

    manifest = json.loads((out / 'manifest.json').read_text())
    assert manifest['name'] == 'Toy'
    assert manifest['normal_class'] == '1'
    assert len(manifest['splits']) == 10

    # 10 normal series: 8 in the corpus plus round(0.8) anomaly
    split = manifest['splits'][3]
    assert split == {'seed': 3, 'corpus': 9, 'test_normal': 2,
                     'test_anomaly': 3}

    corpus = sw.read_streams(out / 'split-3' / 'corpus.jsonl')
    assert len(corpus) == 9
    assert manifest['config']['anomaly_rate'] == 0.1


def test_prepare_ais(tmp_path):

    short = tmp_path / 'short.yaml'
    short.write_text('synthetic_hours: 3\n')

    out = tmp_path / 'out'
    code = main(['prepare', 'ais-synthetic', '-o', str(out), '--config',
                 str(short), '--sample-size', '20', '--seed', '1'])
    assert code == 0

    manifest = json.loads((out / 'manifest.json').read_text())
    assert manifest['vessels'] == {'corpus': 20, 'test_normal': 20,
                                   'test_anomaly': 40}
    assert manifest['corpus'] == 20

    anomalies = sw.read_streams(out / 'test-anomaly.jsonl')
    assert len(anomalies) == 20
    assert all(s.timestamps is not None for s in anomalies)

    # reload through the ais loader
    rows = ['MMSI,BaseDateTime,LAT,LON,Length']
    for record in sw.datasets.make_trajectories(4, 3, 2., seed=2):
        lat, lon = record.positions.points.T
        seconds = record.positions.timestamps.astype(np.int64)
        times = np.datetime_as_string(seconds.astype('datetime64[s]'))
        for t, y, x in zip(times, lat, lon):
            rows.append(f"{record.vessel_id},{t},{y:.8f},{x:.8f},"
                        f"{record.length_m}")

    raw = tmp_path / 'ais.csv'
    raw.write_text('\n'.join(rows) + '\n')

    config = tmp_path / 'config.yaml'
    config.write_text('segment_m: 1000\nsample_size: 10\n')

    out = tmp_path / 'real'
    assert main(['prepare', 'ais', str(raw), '-o', str(out),
                 '--config', str(config)]) == 0

    manifest = json.loads((out / 'manifest.json').read_text())
    assert manifest['stats']['vessels'] == 7
    assert manifest['vessels']['test_anomaly'] == 3


def test_run_config(tmp_path):

    config = RunConfig()
    assert config.order == 3 and config.epsilon == 0.05
    assert config.ais_columns['vessel_id'] == 'MMSI'

    config.update(order=4, seed=None)
    assert config.order == 4 and config.seed == 0

    config.update(ais_columns={'length': 'LengthM'})
    assert config.ais_columns['length'] == 'LengthM'
    assert config.ais_columns['latitude'] == 'LAT'

    record = config.to_dict()
    record['order'] = 10
    assert config.order == 4

    assert RunConfig(order=4, ais_columns={'length': 'LengthM'}) == config

    with pytest.raises(AttributeError):
        config.order = 2

    with pytest.raises(sw.ConfigError):
        _ = RunConfig(fake=1)

    with pytest.raises(sw.ConfigError):
        _ = RunConfig(epsilon=0.)

    with pytest.raises(sw.ConfigError):
        _ = RunConfig(order=1.5)

    with pytest.raises(sw.ConfigError):
        _ = RunConfig(transforms=['fake'])

    with pytest.raises(sw.ConfigError):
        _ = RunConfig(normalization='fake')

    with pytest.raises(sw.ConfigError, match='n_jobs'):
        _ = RunConfig(n_jobs=0)

    with pytest.raises(sw.ConfigError, match='n_jobs'):
        _ = RunConfig(n_jobs=-2)

    assert RunConfig(n_jobs=-1).n_jobs == -1

    with pytest.raises(sw.ConfigError, match='segments_m'):
        _ = RunConfig(segments_m=[4000., 0.])

    with pytest.raises(sw.ConfigError, match='segments_m'):
        _ = RunConfig(segments_m='4000')

    assert RunConfig(segments_m=[500]).segments_m == [500.]

    with pytest.raises(sw.ConfigError):
        config.update(order=0, seed=5)
    assert config.seed == 0

    yaml_file = tmp_path / 'config.yaml'
    yaml_file.write_text('null_tolerance: 1e-6\nnormal_class: 2\n')

    config = RunConfig.from_yaml(yaml_file)
    assert config.null_tolerance == 1e-6
    assert config.normal_class == '2'

    yaml_file.write_text('')
    assert RunConfig.from_yaml(yaml_file) == RunConfig()

    yaml_file.write_text('- order\n')
    with pytest.raises(sw.ConfigError):
        _ = RunConfig.from_yaml(yaml_file)

    yaml_file.write_text('order: [1\n')
    with pytest.raises(sw.ConfigError):
        _ = RunConfig.from_yaml(yaml_file)


def test_reproduce_pendigits(pendigits_dir, tmp_path):

    config = RunConfig(bootstrap=20)
    results = reproduce('pendigits', [pendigits_dir], config, orders=[1, 2],
                        ecdf_prefix=tmp_path / 'digits')

    assert isinstance(results, ResultsTable)
    assert results.order.tolist() == [1, 2]
    assert set(results.metric) == {'auc'}
    assert results.segment_m.isna().all()

    # 4 test instances scored against 2 digit models
    assert results.n_normal.tolist() == [3, 3]
    assert results.n_anomaly.tolist() == [5, 5]
    assert results.value.between(0., 1.).all()

    for N in (1, 2):
        table = EcdfTable.from_csv(tmp_path / f"digits_ecdf_N{N}.csv")
        assert table.df.columns.tolist() == ['class', 'value', 'fraction']

        for name, count in (('normal', 3), ('anomaly', 5)):
            steps = table.df[table['class'] == name]
            assert steps.fraction.iloc[-1] == 1.
            assert steps.fraction.min() >= 1. / count
            assert steps.value.is_monotonic_increasing

    assert not (tmp_path / 'digits_ecdf_N3.csv').exists()


def test_reproduce_pendigits_cli_ecdf(pendigits_dir, tmp_path):

    output = tmp_path / 'results.csv'
    code = main(['reproduce', 'pendigits', str(pendigits_dir), '--orders',
                 '2', '-o', str(output)])
    assert code == 0

    assert len(ResultsTable.from_csv(output)) == 1
    assert (tmp_path / 'results_ecdf_N2.csv').exists()


def test_reproduce_ucr(ucr_files):

    config = RunConfig(bootstrap=5, n_splits=3)
    results = reproduce('ucr', ucr_files, config, orders=[2],
                        rates=[0., 0.1])

    assert results.setting.tolist() == ['rate=0', 'rate=0.1']
    assert set(results.metric) == {'balanced-accuracy'}
    assert results.value.between(0.5, 1.).all()


def test_reproduce_ais_synthetic(tmp_path, capsys):

    config = tmp_path / 'config.yaml'
    config.write_text('bootstrap: 10\nsample_size: 30\nsynthetic_hours: 3\n')

    output = tmp_path / 'results.csv'
    code = main(['reproduce', 'ais-synthetic', '--orders', '1',
                 '--segments', '4000', '8000', '--config', str(config),
                 '-o', str(output)])
    assert code == 0
    assert 'lead-lag' in capsys.readouterr().out

    results = ResultsTable.from_csv(output)
    assert len(results) == 16
    assert results.segment_m.tolist() == [4000.]*8 + [8000.]*8

    settings = results.setting.tolist()
    assert settings[:8] == settings[8:]
    assert settings[0] == 'none'
    assert settings[7] == 'time-diff,lead-lag,invisibility'
    assert (results.n_normal == 30).all()

    # no ECDF export outside pendigits
    assert not list(tmp_path.glob('*_ecdf_*'))


def test_ais_all_transforms_separate_small_vessels():

    records = sw.datasets.make_trajectories(24, 24, hours=12., seed=3)
    exp = sw.datasets.build_ais_experiment(records, 4000., sample_size=500,
                                           seed=3)

    for name in ('corpus', 'normal_test', 'anomaly_test'):
        assert len({s.id for s in exp[name]}) == 500

    model = ConformanceModel.from_streams(
        exp.corpus, 3, transforms=['time-diff', 'lead-lag', 'invisibility'],
        normalization='corpus',
    )
    assert model.features(exp.corpus[:1]).shape == (1, 400)

    normal = score_batch(model, model.features(exp.normal_test))
    anomaly = score_batch(model, model.features(exp.anomaly_test))

    assert not np.isinf(np.r_[normal, anomaly]).all()
    assert roc_auc(ScoredDataset.from_groups(normal, anomaly)) >= 0.95


def test_reproduce_errors(tmp_path):

    with pytest.raises(sw.ConfigError):
        _ = reproduce('fake', [], RunConfig())

    with pytest.raises(sw.ConfigError, match='raw dataset'):
        _ = reproduce('ucr', [], RunConfig())

    assert main(['reproduce', 'pendigits']) == 2
    assert main(['reproduce', 'ais-synthetic', '--n-jobs', '0']) == 2
    assert main(['reproduce', 'ais-synthetic', '--segments', '-5']) == 2

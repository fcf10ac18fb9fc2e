import json
import time
import logging

import pytest
import numpy as np
import pandas as pd
import sigworks as sw


def test_progbar_initialization():

    with pytest.raises(ValueError, match='cannot be None'):
        _ = sw.utils.ProgressBar(iterable=None)

    bar = sw.utils.ProgressBar([1, 2, 3], desc='streams')
    assert bar.total == 3
    assert bar.desc.startswith('streams')
    assert bar.leave is False

    bar = sw.utils.ProgressBar((i for i in range(4)), total=4)
    assert bar.total == 4


def test_iterable_progbar():

    seen = [i for i in sw.utils.ProgressBar(range(10))]
    assert seen == list(range(10))

    rows = np.arange(6.).reshape(3, 2)
    off = sw.utils.ProgressBar(rows, 'rows', enabled=False)
    assert off.disable is True
    assert [r.tolist() for r in off] == rows.tolist()

    bar = sw.utils.ProgressBar(range(5), leave=True)
    for _ in bar:
        pass

    assert bar.n == 5
    assert bar.leave is True


def test_RichResult():

    # basic
    result = sw.utils.RichResult()
    assert result._order_keys == []
    assert repr(result) == 'RichResult()'

    # access via dict-style or attr-style
    result = sw.utils.RichResult(a=1, c=np.random.rand(5))
    assert (result.a == result['a']) and (result.a is result['a'])
    assert np.all(result.c == result['c']) and (result.c is result['c'])

    with pytest.raises(AttributeError):
        _ = result.missing

    # subclassing
    class NewResult(sw.utils.RichResult):
        pass

    result = NewResult()
    assert repr(result) == 'NewResult()'

    # repr ordering, keys are compared in lower case
    class OrderedResult(sw.utils.RichResult):
        _order_keys = ['first', 'second_r']

    new = NewResult(second_R=None, first=None)
    ordered = OrderedResult(second_R=None, first=None)
    assert new == ordered
    assert repr(new) != repr(ordered)
    assert repr(ordered).index('first') < repr(ordered).index('second_R')
    assert list(ordered.to_dict()) == ['first', 'second_R']
    assert dir(ordered) == sorted(ordered.keys())

    # infinite scores print as-is
    result = sw.utils.RichResult(value=np.inf)
    assert 'inf' in repr(result)

    # lists of streams print as a count
    streams = [sw.Stream([[0., 0.], [1., 1.]]) for _ in range(3)]
    result = sw.utils.RichResult(corpus=streams, seeds=[1, 2])
    assert '[3 x Stream]' in repr(result)
    assert '[1, 2]' in repr(result)

    # nested results are indented under their key
    inner = OrderedResult(first=1., second_R=2.)
    outer = sw.utils.RichResult(score=inner, flag=True)
    lines = repr(outer).strip('\n').splitlines()
    assert lines[0].strip() == 'score:'
    assert lines[1].strip() == 'first: 1.0'

    # copy
    copy = ordered.copy()
    assert isinstance(copy, sw.utils.RichResult)
    assert (copy == ordered) and not (copy is ordered)


def test_RichResult_to_dict():

    result = sw.utils.RichResult(
        value=np.float64(np.inf),
        low=-np.inf,
        index=np.int64(3),
        flag=np.bool_(True),
        tail=np.array([0.5, np.inf]),
        name='x',
        nothing=None,
        nested=sw.utils.RichResult(n=np.int32(2)),
    )

    record = result.to_dict()
    assert record == {
        'value': 'inf',
        'low': '-inf',
        'index': 3,
        'flag': True,
        'tail': [0.5, 'inf'],
        'name': 'x',
        'nothing': None,
        'nested': {'n': 2},
    }

    assert type(record['index']) is int
    assert type(record['flag']) is bool
    assert json.loads(json.dumps(record, allow_nan=False)) == record

    with pytest.raises(ValueError, match='NaN'):
        _ = sw.utils.RichResult(value=np.nan).to_dict()

    with pytest.raises(TypeError, match='Stream'):
        _ = sw.utils.RichResult(s=sw.Stream([[0.]])).to_dict()


def test_format_float_10():
    from sigworks.utils._rich_result import _format_float_10

    assert _format_float_10(np.inf) == '       inf'
    assert _format_float_10(-np.inf) == '      -inf'
    assert _format_float_10(np.nan) == '       nan'

    assert _format_float_10(0.123456789) == ' 1.235e-01'
    assert _format_float_10(1.234567890) == ' 1.235e+00'
    assert _format_float_10(1234.567890) == ' 1.235e+03'


def test_timer(caplog):

    # invalid units
    with pytest.raises(ValueError):
        _ = sw.utils.Timer(units='fake')

    timer = sw.utils.Timer()
    assert timer.elapsed_time == 0.

    # basic
    def f():
        time.sleep(1e-3)
        return 0.

    with caplog.at_level(logging.INFO, logger='sigworks.utils'):
        with sw.utils.Timer('success') as timer:
            _ = f()

    assert timer.name == 'success'
    assert timer.elapsed_time >= 1e-3
    assert any(r.getMessage().startswith('success: ') and
               r.getMessage().endswith(' s') for r in caplog.records)

    caplog.clear()
    with caplog.at_level(logging.DEBUG, logger='sigworks.utils'):
        with sw.utils.Timer('quiet', units='min', level=logging.DEBUG):
            pass

    record = caplog.records[-1]
    assert record.levelno == logging.DEBUG
    assert record.getMessage().endswith(' min')


def test_RichTable(tmp_path):

    # basic
    df = pd.DataFrame({'a': [0, 1], 'b': [2, 3]})
    table = sw.utils.RichTable(df)

    assert df is not table.df
    assert table._required_cols == []
    assert repr(table) == repr(df)
    assert len(table) == 2

    # access via dict-style or attr-style
    assert np.all(table.a == table['a'])
    assert np.shares_memory(table.a.to_numpy(), table['a'].to_numpy())
    assert np.all(table[['a', 'b']] == df)

    with pytest.raises(AttributeError):
        _ = table.c

    # no direct assignment
    with pytest.raises(TypeError):
        table['a'] = 1

    with pytest.raises(AttributeError, match="Use 'df'"):
        table.a = 1

    # subclassing
    class NewTable(sw.utils.RichTable):
        _required_cols = ['c', 'd']

    with pytest.raises(ValueError, match='Missing required columns'):
        _ = NewTable(df)

    df2 = df.rename(columns={'a': 'c', 'b': 'd'})
    new_table = NewTable(df2)
    assert new_table.df.equals(df2)

    # copy
    copy = new_table.copy()
    assert isinstance(copy, NewTable)
    assert copy.df.equals(new_table.df)
    assert not np.shares_memory(copy.c.to_numpy(), new_table.c.to_numpy())

    # to/from csv, without the index
    filepath = tmp_path / 'table.csv'
    new_table.to_csv(filepath)
    assert filepath.read_bytes().splitlines()[0] == b'c,d'
    assert b'\r' not in filepath.read_bytes()

    read = NewTable.from_csv(filepath)
    assert new_table.df.equals(read.df)


def test_RichTable_text_columns(tmp_path):

    class IdTable(sw.utils.RichTable):
        _required_cols = ['id', 'value']
        _text_cols = ['id', 'note']

    df = pd.DataFrame({'id': [7, 8, 9], 'value': [0.1 + 0.2, np.inf, 1.],
                       'note': ['x', None, '']})

    table = IdTable(df)
    assert table.id.tolist() == ['7', '8', '9']
    assert table.note.tolist() == ['x', '', '']

    filepath = tmp_path / 'ids.csv'
    filepath.write_text('id,value,note\n007,0.30000000000000004,x\n'
                        '08,inf,\n')

    read = IdTable.from_csv(filepath)
    assert read.id.tolist() == ['007', '08']
    assert read.note.tolist() == ['x', '']
    assert read.value.tolist() == [0.1 + 0.2, np.inf]

    again = tmp_path / 'again.csv'
    read.to_csv(again)
    assert again.read_bytes() == filepath.read_bytes()

    empty = tmp_path / 'empty.csv'
    empty.write_text('')
    with pytest.raises(pd.errors.EmptyDataError):
        _ = IdTable.from_csv(empty)

def test_index(client):
    response = client.get('/')
    assert response.status_code == 200
    data = response.get_json()
    assert data['status'] == 'OK'
    assert data['guards']['cor11'] == 5


def test_klpoly(client):
    response = client.get('/0/compute/klpoly?u=1234&w=3412')
    assert response.status_code == 200
    body = response.get_json()
    assert body['error'] == []
    assert body['result']['P'] == '1+q'


def test_trace(client):
    body = client.get('/0/compute/trace?family=eps&lambda=1,1&at=T:21').get_json()
    assert body['result']['value'] == '-1+q'
    body = client.post('/0/compute/trace', json={'family': 'eta', 'lambda': '2'}).get_json()
    assert body['result']['values'] == {'12': '1', '21': 'q'}


def test_symfunc(client):
    body = client.post('/0/compute/symfunc', json={'kind': 'llt', 'w': '21'}).get_json()
    assert body['result']['text'] == 'm[2] + (1+q)·m[1,1]'
    body = client.post('/0/compute/symfunc', json={'at': 'ctilde:21', 'basis': 'p'}).get_json()
    assert body['result']['basis'] == 'p'
    body = client.post('/0/compute/symfunc', json={'kind': 'chromatic', 'w': '231', 'N': 4}).get_json()
    assert body['result']['terms'] == {'[2,1]': 'q', '[1,1,1]': '1+4q+q^{2}'}


def test_qnormalize(client):
    body = client.post('/0/compute/qnormalize', json={'word': '2,2;1,1'}).get_json()
    assert body['result']['text'] == 't[1,1]·t[2,2] + (-q^{-1/2}+q^{1/2})·t[1,2]·t[2,1]'


def test_immanant(client):
    body = client.get('/0/compute/immanant?family=eps&lambda=1,1').get_json()
    assert body['result']['denominator'] == '1'
    assert body['result']['immanant'].startswith('2·t[1,1]·t[2,2]')


def test_bad_requests(client):
    response = client.get('/0/compute/klpoly')
    assert response.status_code == 400
    assert response.get_json()['error'][0].startswith('EGeneral:Invalid arguments')

    response = client.post('/0/compute/symfunc', json={'kind': 'llt', 'w': '312'})
    assert response.status_code == 400
    assert response.get_json()['error'][0].startswith('EInput:Forbidden pattern')

    response = client.get('/0/compute/trace?family=omega&lambda=2')
    assert response.status_code == 400

    response = client.get('/0/nothing')
    assert response.status_code == 404
    assert response.get_json() == {'error': ['EGeneral:Unknown method'], 'result': {}}


def test_verify_and_reports(client):
    response = client.post('/0/verify/hecke', json={'n': 2})
    assert response.status_code == 200
    result = response.get_json()['result']
    assert result['status'] == 'pass'
    assert len(result['reports']) == 4

    body = client.get('/0/verify/reports?identity=hecke').get_json()
    assert body['result']['count'] == 4
    assert {r['identity'] for r in body['result']['reports']} == {'hecke:associativity', 'hecke:group_algebra'}

    client.post('/0/verify/kl', json={'n': 1, 'store': False})
    assert client.get('/0/verify/reports?identity=kl').get_json()['result']['count'] == 0


def test_verify_rejects_unknown_identity(client):
    response = client.post('/0/verify/nope', json={'n': 1})
    assert response.status_code == 400
    response = client.post('/0/verify/cor11', json={'n': 'many'})
    assert response.status_code == 400
